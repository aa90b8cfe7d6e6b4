#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stochint/doleans_measure.hpp"
#include "stochint/projection.hpp"
#include "stochint/step_path.hpp"

namespace stochint {

// Default: a 4-standard-error gate keeps multi-test suites stable
// (false-alarm rate about 6e-5 per test).
inline constexpr double kDefaultZThreshold = 4.0;

// One Monte Carlo estimate against a target, carrying everything needed to
// reproduce it bit-for-bit.
struct McReport {
    std::string estimator;
    double estimate = 0.0;
    double std_error = 0.0;
    double target = 0.0;
    double z_score = 0.0;
    double z_threshold = kDefaultZThreshold;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    bool pass = false;
};

// Sample mean vs target; zero-variance samples pass only on exact equality.
McReport mc_report(std::string estimator, std::span<const double> samples, double target,
                   double z_threshold, std::uint64_t seed);

// Difference of two Monte Carlo means at a combined standard error.
McReport mc_two_sample_report(std::string estimator, std::span<const double> lhs,
                              std::span<const double> rhs, double z_threshold,
                              std::uint64_t seed);

// Per-time z-tests of integral samples against a target curve. Requires at
// least 100 samples per time.
std::vector<McReport> martingale_mean_test(const std::string& estimator_prefix,
                                           std::span<const double> times,
                                           const std::vector<std::vector<double>>& samples_at_times,
                                           std::span<const double> targets, double z_threshold,
                                           std::uint64_t seed);

struct ConvergenceRow {
    int level;
    double anchor;
    double lp_error;  // L^p(mu) norm of the dyadic-shift error
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    // Least-squares slope of log2(lp_error) vs level over the top half of the
    // level range, at the first anchor (pre-asymptotic levels discarded).
    double fitted_rate = 0.0;
};

// Mean L^p(mu) dyadic-shift error per (level, anchor), averaged over
// freshly generated realizations; the Monte Carlo estimate of the
// ||Phi^n - Phi||_{L^p(mu)} decay the projection is built on.
ConvergenceTable dyadic_convergence_study(
    const std::function<StepPath(std::uint64_t path_index)>& make_path, const DoleansMeasure& mu,
    std::span<const int> levels, std::span<const double> anchors, std::size_t n_paths);

// Least-squares slope of log2(err) vs level over [from_level, to_level].
double fit_log2_slope(std::span<const ConvergenceRow> rows, double anchor, int from_level,
                      int to_level);

struct Prop22Row {
    std::size_t path_index;
    std::size_t measure_index;
    double distance;
    bool exactly_zero;
};

// Exact check that each path equals its left-limit projection mu-a.e., for
// every (path, measure) combination; distances must be exactly 0.
std::vector<Prop22Row> proposition_22_check(std::span<const StepPath> paths,
                                            std::span<const DoleansMeasure> measures);

}  // namespace stochint
