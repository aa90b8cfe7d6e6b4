#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "stochint/doleans_measure.hpp"
#include "stochint/jump_drift_path.hpp"
#include "stochint/sampled_path.hpp"
#include "stochint/step_path.hpp"
#include "stochint/time_grid.hpp"
#include "stochint/vector_value.hpp"
#include "test_util.hpp"

using namespace stochint;

namespace {
StepPath two_jump_path() {
    return StepPath::scalar(0.0, {{0.3, 1.0}, {0.7, 2.0}}, 1.0);
}
}  // namespace

TEST_CASE("TimeGrid validation and refinement") {
    CHECK_THROWS_AS(TimeGrid({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.0, 0.5, 0.5}), std::invalid_argument);

    TimeGrid g({0.0, 0.5, 1.0});
    TimeGrid r = g.refined(std::vector<double>{0.25});
    CHECK(r.points() == std::vector<double>{0.0, 0.25, 0.5, 1.0});

    TimeGrid g2({0.0, 1.0});
    CHECK(g2.refined(std::vector<double>{}).points() == std::vector<double>{0.0, 1.0});
    CHECK(g2.refined(std::vector<double>{0.5, 0.5}).points() ==
          std::vector<double>{0.0, 0.5, 1.0});
    CHECK_THROWS_AS(g2.refined(std::vector<double>{1.5}), std::domain_error);

    CHECK(g.cell_index(0.0) == 0);
    CHECK(g.cell_index(0.5) == 1);
    CHECK(g.cell_index(0.49) == 0);
    CHECK(g.cell_index(1.0) == 2);
    CHECK(g.contains_point(0.5));
    CHECK_FALSE(g.contains_point(0.25));
}

TEST_CASE("VectorValue arithmetic and norms") {
    VectorValue v{3.0, 4.0};
    CHECK(v.norm() == doctest::Approx(5.0));
    CHECK(v.sum_sq() == 25.0);
    CHECK(VectorValue::zero(2).is_zero());
    CHECK_FALSE(v.is_zero());
    CHECK((v - v).is_zero());
    CHECK((2.0 * v)[1] == 8.0);
    CHECK_THROWS_AS(v += VectorValue{1.0}, std::invalid_argument);
    CHECK(lp_power(25.0, 2.0) == 25.0);
    CHECK(lp_power(25.0, 1.0) == 5.0);
    CHECK(lp_power(0.0, 1.5) == 0.0);
}

TEST_CASE("StepPath right-continuous evaluation") {
    StepPath p = two_jump_path();
    CHECK(p.scalar_value(0.3) == 1.0);   // right-continuity at a jump
    CHECK(p.scalar_value(0.29) == 0.0);  // pre-jump value
    CHECK(p.scalar_value(1.0) == 2.0);   // terminal value
    CHECK(p.scalar_left_limit(0.3) == 0.0);
    CHECK(p.scalar_left_limit(0.5) == 1.0);
    CHECK(p.scalar_left_limit(0.0) == 0.0);  // convention: left limit at 0 is the initial value
    CHECK(p.jump(0.3).scalar() == 1.0);
    CHECK(p.jump(0.5).scalar() == 0.0);
    CHECK_THROWS_AS(p.value(-0.1), std::domain_error);
    CHECK_THROWS_AS(p.value(1.1), std::domain_error);
}

TEST_CASE("StepPath left-continuous orientation") {
    StepPath p = StepPath::scalar(0.0, {{0.3, 1.0}, {0.7, 2.0}}, 1.0,
                                  Continuity::left_continuous);
    CHECK(p.scalar_value(0.3) == 0.0);  // pre-jump value at the change time
    CHECK(p.scalar_value(0.31) == 1.0);
    CHECK(p.scalar_value(0.7) == 1.0);
    CHECK(p.scalar_value(1.0) == 2.0);
    // Open-interval cell values agree with the right-continuous orientation.
    CHECK(p.value_from_right(0.3).scalar() == 1.0);
}

TEST_CASE("value = left_limit + jump everywhere") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        StepPath p = test::random_step_path(i);
        for (double t : {0.0, 0.1, 0.25, 0.5, 0.75, 0.999, 1.0}) {
            CHECK(p.scalar_value(t) == p.scalar_left_limit(t) + p.jump(t).scalar());
        }
        for (const auto& e : p.events()) {
            CHECK(p.scalar_value(e.time) == p.scalar_left_limit(e.time) + p.jump(e.time).scalar());
        }
    }
}

TEST_CASE("StepPath validation") {
    CHECK_THROWS_AS(StepPath::scalar(0.0, {{0.5, 1.0}, {0.5, 2.0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StepPath::scalar(0.0, {{1.5, 1.0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StepPath::scalar(0.0, {{0.0, 1.0}}, 1.0), std::invalid_argument);
}

TEST_CASE("exact_lp_integral on the worked example") {
    StepPath p = two_jump_path();
    // p = 2, f = 1: 0^2*0.3 + 1^2*0.4 + 2^2*0.3 = 1.6.
    CHECK(exact_lp_integral(p, DoleansMeasure::lebesgue(1.0, 2.0)) == doctest::Approx(1.6));
    // zero path
    CHECK(exact_lp_integral(StepPath::constant(VectorValue::scalar(0.0), 1.0),
                            DoleansMeasure::lebesgue(1.0, 2.0)) == 0.0);
    // density scaling, p = 1: 2 * (0*0.3 + 1*0.4 + 2*0.3) = 2.0.
    CHECK(exact_lp_integral(p, DoleansMeasure::constant_density(1.0, 2.0, 1.0)) ==
          doctest::Approx(2.0));
}

TEST_CASE("exact_lp_integral window additivity and homogeneity") {
    DoleansMeasure mu = DoleansMeasure::lebesgue(1.0, 2.0);
    for (std::uint64_t i = 0; i < 30; ++i) {
        StepPath p = test::random_step_path(i);
        double full = exact_lp_integral(p, mu);
        for (double split : {0.2, 0.5, 0.77}) {
            double a = exact_lp_integral(p, mu, 0.0, split);
            double b = exact_lp_integral(p, mu, split, 1.0);
            CHECK(full == doctest::Approx(a + b).epsilon(1e-12));
        }
        // degree-p homogeneity under scalar scaling
        StepPath scaled = p.map_values([](const VectorValue& v) { return 3.0 * v; });
        CHECK(exact_lp_integral(scaled, mu) == doctest::Approx(9.0 * full).epsilon(1e-12));
    }
}

TEST_CASE("piecewise density kernel mass") {
    StepPath density = StepPath::scalar(1.0, {{0.5, 3.0}}, 1.0);
    DoleansMeasure mu = DoleansMeasure::piecewise(density, 1.0);
    CHECK(mu.kernel_mass(0.0, 1.0) == doctest::Approx(0.5 + 1.5));
    CHECK(mu.kernel_mass(0.25, 0.75) == doctest::Approx(0.25 + 0.75));
    CHECK(mu.total_mass() == doctest::Approx(2.0));
    CHECK(DoleansMeasure::constant_density(2.0, 3.0, 1.0).kernel_mass(0.5, 1.5) ==
          doctest::Approx(3.0));
    CHECK_THROWS_AS(DoleansMeasure::piecewise(StepPath::scalar(-1.0, {}, 1.0), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(DoleansMeasure::lebesgue(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("lp_distance detects differences and exact equality") {
    StepPath p = two_jump_path();
    DoleansMeasure mu1 = DoleansMeasure::lebesgue(1.0, 1.0);
    CHECK(lp_distance(p, p, mu1) == 0.0);
    StepPath shifted = p.map_values([](const VectorValue& v) { return v + VectorValue{1.0}; });
    CHECK(lp_distance(p, shifted, mu1) == doctest::Approx(1.0).epsilon(1e-12));

    // Paths differing only at a single time have distance exactly zero.
    StepPath q = StepPath::scalar(0.0, {{0.3, 1.0}, {0.7, 2.0}}, 1.0,
                                  Continuity::left_continuous);
    CHECK(lp_distance(p, q, mu1) == 0.0);
    CHECK(measure_where_different(p, q) == 0.0);
}

TEST_CASE("measure_where_different on a shifted copy") {
    StepPath p = two_jump_path();
    StepPath late = StepPath::scalar(0.0, {{0.4, 1.0}, {0.7, 2.0}}, 1.0);
    CHECK(measure_where_different(p, late) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("JumpDriftPath evaluation") {
    // value 0 on [0, 0.5) with slope 1, jump +2 at 0.5, slope -1 after.
    JumpDriftPath p({{0.0, VectorValue::scalar(0.0), VectorValue::scalar(1.0)},
                     {0.5, VectorValue::scalar(2.5), VectorValue::scalar(-1.0)}},
                    1.0);
    CHECK(p.scalar_value(0.0) == 0.0);
    CHECK(p.scalar_value(0.25) == doctest::Approx(0.25));
    CHECK(p.scalar_left_limit(0.5) == doctest::Approx(0.5));
    CHECK(p.scalar_value(0.5) == doctest::Approx(2.5));
    CHECK(p.jump(0.5).scalar() == doctest::Approx(2.0));
    CHECK(p.scalar_value(1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(p.value(1.5), std::domain_error);
    CHECK_THROWS_AS(JumpDriftPath({{0.1, VectorValue::scalar(0.0), VectorValue::scalar(0.0)}}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("SampledPath step view") {
    TimeGrid grid({0.0, 0.5, 1.0});
    SampledPath s(grid, 1);
    s.at(1)[0] = 2.0;
    s.at(2)[0] = -1.0;
    StepPath p = s.as_step_path();
    CHECK(p.scalar_value(0.0) == 0.0);
    CHECK(p.scalar_value(0.49) == 0.0);
    CHECK(p.scalar_value(0.5) == 2.0);
    CHECK(p.scalar_value(0.99) == 2.0);
    CHECK(p.scalar_value(1.0) == -1.0);
}
