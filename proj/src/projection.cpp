#include "stochint/projection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochint {

TruncationSpec::TruncationSpec(double level_) : level(level_) {
    if (!(level >= 1.0)) throw std::invalid_argument("TruncationSpec: level must be >= 1");
}

double theta(int level, double t) {
    if (level < 0) throw std::invalid_argument("theta: level must be >= 0");
    // j - 1 = ceil(t * 2^n) - 1; the scaling by 2^n is exact.
    double scaled = std::ldexp(t, level);
    return std::ldexp(std::ceil(scaled) - 1.0, -level);
}

StepPath dyadic_shift(const StepPath& path, const DyadicApproxParams& params) {
    if (params.level < 0) throw std::invalid_argument("dyadic_shift: level must be >= 0");
    const double T = path.horizon();
    const double s = params.anchor;
    if (s < 0.0 || s > T) throw std::domain_error("dyadic_shift: anchor outside [0, horizon]");

    const double h = std::ldexp(1.0, -params.level);

    // Zero-extended evaluation of the input outside [0, T].
    const VectorValue zero = VectorValue::zero(path.dim());
    auto eval = [&](double u) -> const VectorValue& {
        if (u < 0.0 || u > T) return zero;
        return path.value(u);
    };

    // Index of the first cell boundary strictly inside (0, T). Computed
    // approximately, then fixed up by direct comparison.
    auto boundary = [&](long long j) { return s + static_cast<double>(j) * h; };
    long long j_first = static_cast<long long>(std::floor(-s / h)) + 1;
    while (boundary(j_first) <= 0.0) ++j_first;
    while (j_first > std::numeric_limits<long long>::min() && boundary(j_first - 1) > 0.0) --j_first;

    // Value on (0, first boundary]: anchored at the boundary at or below 0.
    VectorValue initial = eval(boundary(j_first - 1));

    std::vector<StepPath::Event> events;
    VectorValue prev = initial;
    for (long long j = j_first;; ++j) {
        double b = boundary(j);
        if (!(b < T)) break;
        const VectorValue& v = eval(b);
        if (!(v == prev)) {
            events.push_back({b, v});
            prev = v;
        }
    }
    return StepPath(std::move(initial), std::move(events), T, Continuity::left_continuous);
}

StepPath truncate(const StepPath& path, const TruncationSpec& spec) {
    auto cap = [&](const VectorValue& v) {
        double norm = v.norm();
        if (norm <= spec.level) return v;
        VectorValue out = v;
        for (std::size_t i = 0; i < out.dim(); ++i) out[i] = (out[i] / norm) * spec.level;
        return out;
    };
    return path.map_values(cap);
}

StepPath project_left_limit(const StepPath& path) {
    return StepPath(path.initial(), path.events(), path.horizon(), Continuity::left_continuous);
}

MuAeResult mu_ae_equal(const StepPath& a, const StepPath& b, const DoleansMeasure& mu,
                       double tol) {
    if (tol < 0.0) throw std::invalid_argument("mu_ae_equal: tol must be nonnegative");
    double distance = lp_distance(a, b, mu);
    return {distance, distance <= tol};
}

}  // namespace stochint
