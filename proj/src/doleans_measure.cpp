#include "stochint/doleans_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochint {

DoleansMeasure::DoleansMeasure(std::vector<double> breaks, std::vector<double> density, double p)
    : breaks_(std::move(breaks)), density_(std::move(density)), p_(p) {
    if (!(p_ >= 1.0)) throw std::invalid_argument("DoleansMeasure: p must be >= 1");
    for (double f : density_) {
        if (!(f >= 0.0) || !std::isfinite(f)) {
            throw std::invalid_argument("DoleansMeasure: density must be nonnegative and finite");
        }
    }
}

DoleansMeasure DoleansMeasure::lebesgue(double horizon, double p) {
    return constant_density(horizon, 1.0, p);
}

DoleansMeasure DoleansMeasure::constant_density(double horizon, double density, double p) {
    if (!(horizon > 0.0)) throw std::invalid_argument("DoleansMeasure: horizon must be positive");
    return DoleansMeasure({0.0, horizon}, {density}, p);
}

DoleansMeasure DoleansMeasure::piecewise(const StepPath& density, double p) {
    if (density.dim() != 1) {
        throw std::invalid_argument("DoleansMeasure::piecewise: density must be scalar");
    }
    std::vector<double> breaks{0.0};
    for (double t : density.event_times()) {
        if (t < density.horizon()) breaks.push_back(t);
    }
    breaks.push_back(density.horizon());
    std::vector<double> cells;
    cells.reserve(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        cells.push_back(density.value_from_right(breaks[i]).scalar());
    }
    return DoleansMeasure(std::move(breaks), std::move(cells), p);
}

double DoleansMeasure::kernel_mass(double a, double b) const {
    if (a > b) std::swap(a, b);
    a = std::max(a, 0.0);
    b = std::min(b, horizon());
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double lo = std::max(a, breaks_[i]);
        double hi = std::min(b, breaks_[i + 1]);
        if (hi > lo) mass += density_[i] * (hi - lo);
    }
    return mass;
}

namespace {

// Merged, sorted, deduplicated breakpoints of all operands, clipped to
// [t0, t1]. Every returned adjacent pair lies inside one constancy cell of
// each operand, so cell values can be read structurally at the left endpoint.
std::vector<double> merge_breakpoints(std::initializer_list<const std::vector<double>*> lists,
                                      double t0, double t1) {
    std::vector<double> merged{t0, t1};
    for (const auto* lst : lists) {
        for (double t : *lst) {
            if (t > t0 && t < t1) merged.push_back(t);
        }
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

double cell_density(const DoleansMeasure& mu, double u) {
    const auto& breaks = mu.breakpoints();
    auto it = std::upper_bound(breaks.begin(), breaks.end(), u);
    std::size_t i = static_cast<std::size_t>(it - breaks.begin());
    if (i == 0 || i >= breaks.size()) {
        throw std::domain_error("DoleansMeasure: point outside [0, horizon]");
    }
    return mu.density_in_cell(i - 1);
}

double diff_sum_sq(const VectorValue& a, const VectorValue& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("lp_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

double exact_lp_integral(const StepPath& path, const DoleansMeasure& mu, double t0, double t1) {
    if (path.horizon() != mu.horizon()) {
        throw std::domain_error("exact_lp_integral: path and measure horizons differ");
    }
    if (t0 < 0.0 || t1 > mu.horizon() || t0 > t1) {
        throw std::domain_error("exact_lp_integral: bad window");
    }
    if (t0 == t1) return 0.0;
    std::vector<double> evs = path.event_times();
    std::vector<double> merged = merge_breakpoints({&evs, &mu.breakpoints()}, t0, t1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        double u = merged[i];
        double len = merged[i + 1] - u;
        double sq = path.value_from_right(u).sum_sq();
        if (sq != 0.0) total += lp_power(sq, mu.p()) * cell_density(mu, u) * len;
    }
    return total;
}

double exact_lp_integral(const StepPath& path, const DoleansMeasure& mu) {
    return exact_lp_integral(path, mu, 0.0, mu.horizon());
}

double lp_distance(const StepPath& a, const StepPath& b, const DoleansMeasure& mu) {
    if (a.horizon() != b.horizon() || a.horizon() != mu.horizon()) {
        throw std::domain_error("lp_distance: horizons differ");
    }
    std::vector<double> ea = a.event_times();
    std::vector<double> eb = b.event_times();
    std::vector<double> merged = merge_breakpoints({&ea, &eb, &mu.breakpoints()}, 0.0, mu.horizon());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        double u = merged[i];
        double len = merged[i + 1] - u;
        double sq = diff_sum_sq(a.value_from_right(u), b.value_from_right(u));
        if (sq != 0.0) total += lp_power(sq, mu.p()) * cell_density(mu, u) * len;
    }
    return total;
}

double measure_where_different(const StepPath& a, const StepPath& b) {
    if (a.horizon() != b.horizon()) {
        throw std::domain_error("measure_where_different: horizons differ");
    }
    std::vector<double> ea = a.event_times();
    std::vector<double> eb = b.event_times();
    std::vector<double> merged = merge_breakpoints({&ea, &eb}, 0.0, a.horizon());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        double u = merged[i];
        if (!(a.value_from_right(u) == b.value_from_right(u))) {
            total += merged[i + 1] - u;
        }
    }
    return total;
}

}  // namespace stochint
