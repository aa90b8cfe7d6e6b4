#include "stochint/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochint {

namespace {

struct MeanVar {
    double mean;
    double se;
};

// Two-pass mean and standard error; summation order is the sample order, so
// results are bit-identical however the samples were produced.
MeanVar mean_and_se(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("mc_report: need at least 2 samples");
    double sum = 0.0;
    for (double x : xs) sum += x;
    double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        double d = x - mean;
        ss += d * d;
    }
    double var = ss / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

McReport finish_report(std::string estimator, double estimate, double se, double target,
                       double z_threshold, std::size_t n, std::uint64_t seed) {
    McReport r;
    r.estimator = std::move(estimator);
    r.estimate = estimate;
    r.std_error = se;
    r.target = target;
    r.z_threshold = z_threshold;
    r.n_paths = n;
    r.seed = seed;
    if (se > 0.0) {
        r.z_score = (estimate - target) / se;
        r.pass = std::fabs(r.z_score) <= z_threshold;
    } else {
        // Degenerate samples: pass only on exact agreement.
        r.pass = (estimate == target);
        r.z_score = r.pass ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return r;
}

}  // namespace

McReport mc_report(std::string estimator, std::span<const double> samples, double target,
                   double z_threshold, std::uint64_t seed) {
    MeanVar mv = mean_and_se(samples);
    return finish_report(std::move(estimator), mv.mean, mv.se, target, z_threshold,
                         samples.size(), seed);
}

McReport mc_two_sample_report(std::string estimator, std::span<const double> lhs,
                              std::span<const double> rhs, double z_threshold,
                              std::uint64_t seed) {
    MeanVar l = mean_and_se(lhs);
    MeanVar r = mean_and_se(rhs);
    double se = std::sqrt(l.se * l.se + r.se * r.se);
    return finish_report(std::move(estimator), l.mean, se, r.mean, z_threshold, lhs.size(), seed);
}

std::vector<McReport> martingale_mean_test(const std::string& estimator_prefix,
                                           std::span<const double> times,
                                           const std::vector<std::vector<double>>& samples_at_times,
                                           std::span<const double> targets, double z_threshold,
                                           std::uint64_t seed) {
    if (times.size() != samples_at_times.size() || times.size() != targets.size()) {
        throw std::invalid_argument("martingale_mean_test: times/samples/targets size mismatch");
    }
    std::vector<McReport> reports;
    reports.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (samples_at_times[i].size() < 100) {
            throw std::invalid_argument("martingale_mean_test: need at least 100 samples");
        }
        reports.push_back(mc_report(estimator_prefix + "@t=" + std::to_string(times[i]),
                                    samples_at_times[i], targets[i], z_threshold, seed));
    }
    return reports;
}

ConvergenceTable dyadic_convergence_study(
    const std::function<StepPath(std::uint64_t path_index)>& make_path, const DoleansMeasure& mu,
    std::span<const int> levels, std::span<const double> anchors, std::size_t n_paths) {
    if (levels.empty() || anchors.empty() || n_paths == 0) {
        throw std::invalid_argument("dyadic_convergence_study: empty study");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i] <= levels[i - 1]) {
            throw std::invalid_argument("dyadic_convergence_study: levels must be ascending");
        }
    }
    // Paths are generated once and reused across all (level, anchor) pairs;
    // sums accumulate in path order, so the result is reduction-order
    // deterministic.
    std::vector<double> sums(anchors.size() * levels.size(), 0.0);
    for (std::uint64_t i = 0; i < n_paths; ++i) {
        StepPath path = make_path(i);
        for (std::size_t si = 0; si < anchors.size(); ++si) {
            for (std::size_t ni = 0; ni < levels.size(); ++ni) {
                StepPath shifted = dyadic_shift(path, {levels[ni], anchors[si]});
                sums[si * levels.size() + ni] += lp_distance(shifted, path, mu);
            }
        }
    }
    ConvergenceTable table;
    for (std::size_t si = 0; si < anchors.size(); ++si) {
        for (std::size_t ni = 0; ni < levels.size(); ++ni) {
            double mean_p = sums[si * levels.size() + ni] / static_cast<double>(n_paths);
            table.rows.push_back({levels[ni], anchors[si], std::pow(mean_p, 1.0 / mu.p())});
        }
    }
    // Fit over the top half of the level range at the first anchor.
    int lo = levels[levels.size() / 2];
    table.fitted_rate = fit_log2_slope(table.rows, anchors[0], lo, levels.back());
    return table;
}

double fit_log2_slope(std::span<const ConvergenceRow> rows, double anchor, int from_level,
                      int to_level) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (const auto& r : rows) {
        if (r.anchor != anchor || r.level < from_level || r.level > to_level) continue;
        if (!(r.lp_error > 0.0)) continue;  // exact zeros carry no rate information
        double x = static_cast<double>(r.level);
        double y = std::log2(r.lp_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("fit_log2_slope: need at least 2 usable rows");
    double n = static_cast<double>(count);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Prop22Row> proposition_22_check(std::span<const StepPath> paths,
                                            std::span<const DoleansMeasure> measures) {
    std::vector<Prop22Row> rows;
    rows.reserve(paths.size() * measures.size());
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        StepPath projected = project_left_limit(paths[pi]);
        for (std::size_t mi = 0; mi < measures.size(); ++mi) {
            double d = lp_distance(paths[pi], projected, measures[mi]);
            rows.push_back({pi, mi, d, d == 0.0});
        }
    }
    return rows;
}

}  // namespace stochint
