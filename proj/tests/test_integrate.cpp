#include <doctest.h>

#include <cmath>
#include <vector>

#include "stochint/errors.hpp"
#include "stochint/integrate.hpp"
#include "test_util.hpp"

using namespace stochint;

namespace {

StepPath two_jump_counting() {
    return StepPath::scalar(0.0, {{0.3, 1.0}, {0.7, 2.0}}, 1.0);
}

// int_0^t N_s ds for a counting path, by the same closed interval sums the
// library uses; kept here as the independent route for closed-form checks.
double integral_of_counting(const StepPath& n, double t) {
    double total = 0.0;
    double prev_time = 0.0;
    double prev_value = n.initial().scalar();
    for (const auto& e : n.events()) {
        if (e.time >= t) break;
        total += prev_value * (e.time - prev_time);
        prev_time = e.time;
        prev_value = e.value.scalar();
    }
    total += prev_value * (t - prev_time);
    return total;
}

}  // namespace

TEST_CASE("ito_simple against a hand-made sampled driver") {
    TimeGrid grid = TimeGrid::uniform(1.0, 4);
    SampledPath w(grid, 1);
    double values[5] = {0.0, 1.0, -1.0, 2.0, 0.0};
    for (std::size_t k = 0; k < 5; ++k) w.at(k)[0] = values[k];

    StepPath constant2 = StepPath::constant(VectorValue::scalar(2.0), 1.0);
    IntegralProcess i1 = ito_simple(constant2, w);
    CHECK(i1.scalar_value(0.0) == 0.0);
    for (std::size_t k = 1; k < 5; ++k) {
        CHECK(i1.scalar_value(grid[k]) == doctest::Approx(2.0 * values[k]));
    }

    StepPath indicator =
        StepPath::scalar(0.0, {{0.5, 1.0}}, 1.0, Continuity::left_continuous);
    IntegralProcess i2 = ito_simple(indicator, w);
    // 1 * (W_0.75 - W_0.5) + 1 * (W_1 - W_0.75) = 3 - 2 = 1.
    CHECK(i2.scalar_value(1.0) == doctest::Approx(1.0));

    StepPath off_grid = StepPath::scalar(0.0, {{0.4, 1.0}}, 1.0, Continuity::left_continuous);
    CHECK_THROWS_AS(ito_simple(off_grid, w), PredictabilityViolation);

    CHECK_THROWS_AS(i1.value(0.3), std::domain_error);  // not a grid point
}

TEST_CASE("zero integrand gives the zero process") {
    TimeGrid grid = TimeGrid::uniform(1.0, 4);
    SampledPath w(grid, 1);
    for (std::size_t k = 0; k < 5; ++k) w.at(k)[0] = static_cast<double>(k);
    StepPath zero = StepPath::constant(VectorValue::scalar(0.0), 1.0);
    IntegralProcess i = ito_simple(zero, w);
    for (std::size_t k = 0; k < 5; ++k) CHECK(i.scalar_value(grid[k]) == 0.0);
}

TEST_CASE("simple integral against the compensated Poisson martingale") {
    StepPath counting = two_jump_counting();
    CompensatedPoisson m = compensated_path(counting, 1.0);

    // Predictable version of the counting path.
    StepPath left = project_left_limit(counting);
    IntegralProcess i = ito_simple(left, m);
    CHECK(i.scalar_value(0.0) == 0.0);
    // (0 + 1) - int_0^1 N_- ds = 1 - 1 = 0.
    CHECK(i.scalar_value(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    // At t = 0.5: jump value 0 at 0.3, compensator 0*0.3 + 1*0.2.
    CHECK(i.scalar_value(0.5) == doctest::Approx(-0.2));

    // A cadlag integrand with events must be projected first.
    CHECK_THROWS_AS(ito_simple(counting, m), PredictabilityViolation);
}

TEST_CASE("extended integral reproduces the closed form on random paths") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        StepPath counting = simulate_poisson(1.5, 1.0, Seed{881, i});
        CompensatedPoisson m = compensated_path(counting, 1.0);
        IntegralProcess ito = ito_extended(counting, m, ProjectionChoice::left_limit());
        for (double t : {0.25, 0.5, 1.0}) {
            double n_t = counting.scalar_value(t);
            double closed = 0.5 * (n_t * n_t - n_t) - integral_of_counting(counting, t);
            CHECK(ito.scalar_value(t) == doctest::Approx(closed).epsilon(1e-12));
        }
        CHECK(ito.integrand_descriptor == "left_limit");
    }
}

TEST_CASE("pathwise Lebesgue-Stieltjes integral and the exact identity") {
    StepPath counting = two_jump_counting();
    CompensatedPoisson m = compensated_path(counting, 1.0);
    IntegralProcess ls = lebesgue_stieltjes(counting, m);
    // (1 + 2) - int_0^1 N ds = 3 - 1 = 2 = (N_1^2 + N_1)/2 - int N.
    CHECK(ls.scalar_value(1.0) == doctest::Approx(2.0).epsilon(1e-12));

    // LS - extended = N_t exactly, per path, at arbitrary times.
    for (std::uint64_t i = 0; i < 60; ++i) {
        StepPath n = simulate_poisson(2.0, 1.0, Seed{882, i});
        CompensatedPoisson mm = compensated_path(n, 2.0);
        IntegralProcess a = lebesgue_stieltjes(n, mm);
        IntegralProcess b = ito_extended(n, mm, ProjectionChoice::left_limit());
        for (double t : {0.1, 0.25, 0.5, 0.8, 1.0}) {
            double residual = a.scalar_value(t) - n.scalar_value(t) - b.scalar_value(t);
            CHECK(std::fabs(residual) <= 1e-12);
        }
    }

    TimeGrid grid = TimeGrid::uniform(1.0, 4);
    SampledPath w(grid, 1);
    CHECK_THROWS_AS(lebesgue_stieltjes(counting, w), UnsupportedDriver);
}

TEST_CASE("martingale contrast in the mean (light Monte Carlo)") {
    const std::size_t n = 20000;
    std::vector<double> ito_terminal(n), ls_terminal(n);
    for (std::size_t i = 0; i < n; ++i) {
        StepPath counting = simulate_poisson(1.0, 1.0, Seed{883, i});
        CompensatedPoisson m = compensated_path(counting, 1.0);
        ito_terminal[i] =
            ito_extended(counting, m, ProjectionChoice::left_limit()).scalar_value(1.0);
        ls_terminal[i] = lebesgue_stieltjes(counting, m).scalar_value(1.0);
    }
    auto mean_se = [&](const std::vector<double>& xs) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        double mean = sum / xs.size();
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return std::pair<double, double>{mean, std::sqrt(ss / (xs.size() - 1) / xs.size())};
    };
    auto [ito_mean, ito_se] = mean_se(ito_terminal);
    auto [ls_mean, ls_se] = mean_se(ls_terminal);
    CHECK(std::fabs(ito_mean) <= 4.0 * ito_se);             // martingale mean
    CHECK(std::fabs(ls_mean - 1.0) <= 4.0 * ls_se);         // E[N_1] = 1
    CHECK(std::fabs(ls_mean) > 4.0 * ls_se);                // and decisively NOT 0
}

TEST_CASE("dyadic-mode extended integral approaches the left-limit mode") {
    for (std::uint64_t i = 0; i < 25; ++i) {
        StepPath n = simulate_poisson(2.0, 1.0, Seed{884, i});
        if (n.events().empty()) continue;
        CompensatedPoisson m = compensated_path(n, 2.0);
        double min_gap = n.events().front().time;
        for (std::size_t k = 1; k < n.events().size(); ++k) {
            min_gap = std::min(min_gap, n.events()[k].time - n.events()[k - 1].time);
        }
        IntegralProcess left = ito_extended(n, m, ProjectionChoice::left_limit());
        for (int level : {6, 10, 14}) {
            if (std::ldexp(1.0, -level) >= min_gap) continue;
            IntegralProcess dy = ito_extended(n, m, ProjectionChoice::dyadic_shifted(level));
            // Atom sums agree exactly once cells separate the jumps; the
            // remaining gap is the compensator acting on the O(2^-n) sliver
            // behind each jump: |gap| <= rate * sum_jumps |dPhi| * 2^-n.
            double bound = 0.0;
            for (const auto& e : n.events()) {
                bound += m.rate() * n.jump(e.time).norm() * std::ldexp(1.0, -level);
            }
            double gap = std::fabs(dy.scalar_value(1.0) - left.scalar_value(1.0));
            CHECK(gap <= bound + 1e-14);
        }
    }
}

TEST_CASE("hs_norm worked values") {
    QSpec q({0.5, 0.25, 0.125});
    CHECK(hs_norm(HsOperator::identity(3), q) == doctest::Approx(0.93541434669348533));
    CHECK(hs_norm(HsOperator(3, 3), q) == 0.0);

    // Rank one: single nonzero column at eigenindex 1 (lambda = 0.25).
    HsOperator rank_one(2, 3);
    rank_one.at(0, 1) = 3.0;
    rank_one.at(1, 1) = 4.0;
    CHECK(hs_norm(rank_one, q) == doctest::Approx(std::sqrt(0.25) * 5.0));

    CHECK_THROWS_AS(hs_norm(HsOperator(2, 2), q), std::domain_error);
}

TEST_CASE("operator step function quadrature") {
    QSpec q({0.5, 0.25, 0.125});
    std::vector<HsOperator> ops;
    ops.push_back(HsOperator::identity(3));
    ops.push_back(HsOperator::diagonal({2.0, 1.0, 0.5}));
    OperatorStepFunction phi({0.0, 0.5}, std::move(ops));
    // 0.875*0.5 + (0.5*4 + 0.25*1 + 0.125*0.25)*0.5 = 1.578125.
    CHECK(phi.squared_hs_time_integral(q, 1.0) == doctest::Approx(1.578125).epsilon(1e-14));
}

TEST_CASE("q-wiener integral of the identity recovers the driver") {
    QSpec q({0.5, 0.25, 0.125});
    TimeGrid grid = TimeGrid::uniform(1.0, 16);
    SampledPath w = simulate_q_wiener(grid, q, Seed{885, 3});
    OperatorStepFunction identity = OperatorStepFunction::constant(HsOperator::identity(3));
    IntegralProcess i = qwiener_integral(identity, w);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        VectorValue v = i.value(grid[k]);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(v[j] == doctest::Approx(w.at(k)[j]).epsilon(1e-12));
        }
    }

    OperatorStepFunction off_grid(
        {0.0, 0.3}, {HsOperator::identity(3), HsOperator::identity(3)});
    CHECK_THROWS_AS(qwiener_integral(off_grid, w), PredictabilityViolation);

    OperatorStepFunction wrong_cols = OperatorStepFunction::constant(HsOperator::identity(2));
    CHECK_THROWS_AS(qwiener_integral(wrong_cols, w), std::domain_error);
}

TEST_CASE("prm integral worked example and compensator") {
    MarkSpace ms = MarkSpace::finite({{0.0, 1.0}, {1.0, 2.0}});
    PrmRealization prm({{0.2, 0.0}, {0.5, 1.0}}, ms, 1.0);
    PrmIntegrand ones = PrmIntegrand::time_constant(
        [](double) { return VectorValue::scalar(1.0); }, 1);
    IntegralProcess i = prm_integral(ones, prm);
    CHECK(i.scalar_value(1.0) == doctest::Approx(-1.0).epsilon(1e-12));  // 2 - 3
    CHECK(i.scalar_value(0.0) == 0.0);

    // Indicator integrand: atoms at b minus t * beta({b}).
    PrmIntegrand indicator = PrmIntegrand::time_constant(
        [](double x) { return VectorValue::scalar(x == 1.0 ? 1.0 : 0.0); }, 1);
    IntegralProcess ib = prm_integral(indicator, prm);
    CHECK(ib.scalar_value(1.0) == doctest::Approx(1.0 - 2.0).epsilon(1e-12));
    CHECK(prm_squared_compensator_integral(indicator, ms, 1.0) == doctest::Approx(2.0));

    // Time-step integrand: cells anchored at the left endpoint; the atom at
    // 0.5 belongs to the first cell (0, 0.5].
    PrmIntegrand steps({0.0, 0.5},
                       {[](double) { return VectorValue::scalar(1.0); },
                        [](double) { return VectorValue::scalar(10.0); }},
                       1);
    IntegralProcess is = prm_integral(steps, prm);
    // Jumps: 1 (at 0.2) + 1 (at 0.5, still the first cell) = 2;
    // compensator: 3 * 0.5 + 30 * 0.5 = 16.5.
    CHECK(is.scalar_value(1.0) == doctest::Approx(2.0 - 16.5).epsilon(1e-12));
}

TEST_CASE("bracket integral worked values") {
    StepPath constant2 = StepPath::constant(VectorValue::scalar(2.0), 1.0);
    CHECK(bracket_integral(constant2, MartingaleDriver::wiener(1.0)) == doctest::Approx(4.0));

    StepPath counting = two_jump_counting();
    StepPath left = project_left_limit(counting);
    CHECK(bracket_integral(left, MartingaleDriver::compensated_poisson(1.0)) ==
          doctest::Approx(1.6).epsilon(1e-12));

    StepPath zero = StepPath::constant(VectorValue::scalar(0.0), 1.0);
    CHECK(bracket_integral(zero, MartingaleDriver::wiener(2.0)) == 0.0);
}

TEST_CASE("integration is linear per path") {
    StepPath phi = StepPath::scalar(1.0, {{0.25, 2.0}, {0.5, 0.0}}, 1.0,
                                    Continuity::left_continuous);
    StepPath psi = StepPath::scalar(0.0, {{0.5, 1.0}}, 1.0, Continuity::left_continuous);
    StepPath combo(VectorValue::scalar(2.0 * 1.0 - 1.0 * 0.0),
                   {{0.25, VectorValue::scalar(2.0 * 2.0)},
                    {0.5, VectorValue::scalar(2.0 * 0.0 - 1.0)}},
                   1.0, Continuity::left_continuous);

    TimeGrid grid = TimeGrid::uniform(1.0, 8);
    SampledPath w = simulate_wiener(grid, 1.0, Seed{886, 9});
    double lhs = ito_simple(combo, w).scalar_value(1.0);
    double rhs = 2.0 * ito_simple(phi, w).scalar_value(1.0) -
                 1.0 * ito_simple(psi, w).scalar_value(1.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    StepPath counting = simulate_poisson(2.0, 1.0, Seed{887, 4});
    CompensatedPoisson m = compensated_path(counting, 2.0);
    double lhs_m = ito_simple(combo, m).scalar_value(1.0);
    double rhs_m = 2.0 * ito_simple(phi, m).scalar_value(1.0) -
                   1.0 * ito_simple(psi, m).scalar_value(1.0);
    CHECK(lhs_m == doctest::Approx(rhs_m).epsilon(1e-12));
}
