#include <doctest.h>

#include <cmath>
#include <vector>

#include "stochint/drivers.hpp"
#include "stochint/projection.hpp"
#include "test_util.hpp"

using namespace stochint;

TEST_CASE("theta: worked values and exactness") {
    CHECK(theta(1, 0.6) == 0.5);
    CHECK(theta(2, 0.25) == 0.0);  // right endpoint of (0, 1/4]
    CHECK(theta(3, 1.0) == 0.875);
    CHECK(theta(0, 0.5) == 0.0);
    CHECK(theta(1, -0.3) == -0.5);
    CHECK_THROWS_AS(theta(-1, 0.5), std::invalid_argument);
}

TEST_CASE("theta: monotone in level, strictly below t, gap bounded") {
    Rng rng(Seed{123, 0});
    for (int i = 0; i < 2000; ++i) {
        double t = -1.0 + 3.0 * rng.next_double();
        double prev = -1e300;
        for (int n = 0; n <= 20; ++n) {
            double th = theta(n, t);
            CHECK(th < t);
            CHECK(t - th <= std::ldexp(1.0, -n));
            CHECK(th >= prev);
            prev = th;
        }
    }
}

TEST_CASE("dyadic shift of the two-jump path at level 1") {
    StepPath p = StepPath::scalar(0.0, {{0.3, 1.0}, {0.7, 2.0}}, 1.0);
    StepPath sh = dyadic_shift(p, {1, 0.0});
    // Phi^1 = 0 on (0, 1/2], 1 on (1/2, 1].
    CHECK(sh.continuity() == Continuity::left_continuous);
    CHECK(sh.scalar_value(0.4) == 0.0);
    CHECK(sh.scalar_value(0.5) == 0.0);
    CHECK(sh.scalar_value(0.51) == 1.0);
    CHECK(sh.scalar_value(1.0) == 1.0);
    REQUIRE(sh.events().size() == 1);
    CHECK(sh.events()[0].time == 0.5);
    CHECK(sh.events()[0].value.scalar() == 1.0);
}

TEST_CASE("dyadic shift of a constant path") {
    StepPath c = StepPath::constant(VectorValue::scalar(3.0), 1.0);
    StepPath sh = dyadic_shift(c, {2, 0.0});
    CHECK(sh.events().empty());
    CHECK(sh.scalar_value(0.7) == 3.0);

    // With a non-dyadic anchor the cell reaching below 0 reads the zero
    // extension.
    StepPath sh2 = dyadic_shift(c, {2, 0.1});
    CHECK(sh2.scalar_value(0.05) == 0.0);
    CHECK(sh2.scalar_value(0.9) == 3.0);
    CHECK_THROWS_AS(dyadic_shift(c, {2, 1.5}), std::domain_error);
}

TEST_CASE("dyadic shift is anchored strictly in the past") {
    // Perturbing the input after the anchor of a cell cannot change the
    // shifted value on that cell.
    StepPath base = test::random_step_path(5);
    const double cut = 0.6;
    std::vector<StepPath::Event> extended = base.events();
    // Remove events after the cut, then add a fresh one: two paths agreeing
    // before `cut` and differing after.
    std::vector<StepPath::Event> before;
    for (const auto& e : extended) {
        if (e.time < cut) before.push_back(e);
    }
    std::vector<StepPath::Event> after = before;
    after.push_back({0.8, VectorValue::scalar(99.0)});
    StepPath p1(base.initial(), before, 1.0);
    StepPath p2(base.initial(), after, 1.0);

    for (int n : {1, 2, 4, 6}) {
        StepPath s1 = dyadic_shift(p1, {n, 0.0});
        StepPath s2 = dyadic_shift(p2, {n, 0.0});
        for (double t = 0.01; t < 1.0; t += 0.01) {
            if (theta(n, t) < cut) {
                CHECK(s1.scalar_value(t) == s2.scalar_value(t));
            }
        }
    }
}

TEST_CASE("dyadic shift L2 error decays on Wiener step views") {
    TimeGrid grid = TimeGrid::uniform(1.0, 1 << 12);
    DoleansMeasure mu = DoleansMeasure::lebesgue(1.0, 2.0);
    const int n_paths = 20;
    std::vector<double> err(3, 0.0);
    const int levels[3] = {4, 6, 8};
    for (int i = 0; i < n_paths; ++i) {
        StepPath w = simulate_wiener(grid, 1.0, Seed{301, static_cast<std::uint64_t>(i)})
                         .as_step_path();
        for (int li = 0; li < 3; ++li) {
            err[li] += lp_distance(dyadic_shift(w, {levels[li], 0.0}), w, mu);
        }
    }
    // Squared error roughly halves per unit level increment (E = T 2^{-n-1}).
    CHECK(err[1] / err[0] == doctest::Approx(0.25).epsilon(0.35));
    CHECK(err[2] / err[1] == doctest::Approx(0.25).epsilon(0.35));
}

TEST_CASE("mismatched-time measure bounded by jumps * 2^-n") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        StepPath p = simulate_poisson(2.0, 1.0, Seed{401, i});
        double jumps = static_cast<double>(p.events().size());
        for (int n : {3, 5, 8, 12}) {
            StepPath sh = dyadic_shift(p, {n, 0.0});
            double mismatch = measure_where_different(sh, p);
            CHECK(mismatch <= jumps * std::ldexp(1.0, -n));
        }
    }
}

TEST_CASE("truncate: scalar cap, radial rescale, no-op, commutation") {
    StepPath p = StepPath::scalar(0.0, {{0.2, 1.0}, {0.6, 5.0}}, 1.0);
    StepPath capped = truncate(p, TruncationSpec(3.0));
    CHECK(capped.scalar_value(0.1) == 0.0);
    CHECK(capped.scalar_value(0.3) == 1.0);
    CHECK(capped.scalar_value(0.7) == 3.0);  // exact: (5/5)*3

    StepPath same = truncate(p, TruncationSpec(10.0));
    for (double t : {0.0, 0.3, 0.7, 1.0}) CHECK(same.scalar_value(t) == p.scalar_value(t));

    StepPath v(VectorValue{3.0, 4.0}, {}, 1.0);
    StepPath unit = truncate(v, TruncationSpec(1.0));
    CHECK(unit.value(0.5)[0] == 0.6);
    CHECK(unit.value(0.5)[1] == 0.8);

    CHECK_THROWS_AS(TruncationSpec(0.5), std::invalid_argument);

    // Norm never increases; commutes with the left-limit projection.
    for (std::uint64_t i = 0; i < 30; ++i) {
        StepPath q = test::random_step_path(i);
        StepPath tq = truncate(q, TruncationSpec(2.0));
        for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) {
            CHECK(tq.value(t).norm() <= 2.0 + 1e-15);
            CHECK(tq.value(t).norm() <= q.value(t).norm() + 1e-15);
        }
        StepPath a = truncate(project_left_limit(q), TruncationSpec(2.0));
        StepPath b = project_left_limit(truncate(q, TruncationSpec(2.0)));
        for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) {
            CHECK(a.scalar_value(t) == b.scalar_value(t));
        }
    }
}

TEST_CASE("left-limit projection: worked values, idempotence, exact identity") {
    StepPath p = StepPath::scalar(0.0, {{0.3, 1.0}, {0.7, 2.0}}, 1.0);
    StepPath proj = project_left_limit(p);
    CHECK(proj.scalar_value(0.3) == 0.0);
    CHECK(proj.scalar_value(0.31) == 1.0);

    StepPath continuous = StepPath::constant(VectorValue::scalar(4.0), 1.0);
    StepPath proj_c = project_left_limit(continuous);
    for (double t : {0.0, 0.5, 1.0}) CHECK(proj_c.scalar_value(t) == 4.0);

    StepPath twice = project_left_limit(proj);
    for (double t : {0.0, 0.3, 0.31, 0.7, 0.9, 1.0}) {
        CHECK(twice.scalar_value(t) == proj.scalar_value(t));
    }

    DoleansMeasure mu = DoleansMeasure::lebesgue(1.0, 2.0);
    CHECK(lp_distance(p, proj, mu) == 0.0);
}

TEST_CASE("mu-a.e. equality decisions") {
    StepPath p = StepPath::scalar(0.0, {{0.3, 1.0}, {0.7, 2.0}}, 1.0);
    DoleansMeasure mu1 = DoleansMeasure::lebesgue(1.0, 1.0);

    MuAeResult same = mu_ae_equal(p, project_left_limit(p), mu1, 0.0);
    CHECK(same.distance == 0.0);
    CHECK(same.equal);

    StepPath plus_one = p.map_values([](const VectorValue& v) { return v + VectorValue{1.0}; });
    MuAeResult off = mu_ae_equal(p, plus_one, mu1, 0.5);
    CHECK(off.distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(off.equal);

    MuAeResult refl = mu_ae_equal(p, p, mu1, 0.0);
    CHECK(refl.distance == 0.0);
    CHECK(refl.equal);

    StepPath other_horizon = StepPath::scalar(0.0, {}, 2.0);
    CHECK_THROWS_AS(mu_ae_equal(p, other_horizon, mu1, 0.0), std::domain_error);
}
