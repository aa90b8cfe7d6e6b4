#include "stochint/jump_drift_path.hpp"

#include <algorithm>
#include <stdexcept>

namespace stochint {

JumpDriftPath::JumpDriftPath(std::vector<Segment> segments, double horizon)
    : segments_(std::move(segments)), horizon_(horizon) {
    if (segments_.empty()) {
        throw std::invalid_argument("JumpDriftPath: need at least one segment");
    }
    if (segments_.front().start != 0.0) {
        throw std::invalid_argument("JumpDriftPath: first segment must start at 0");
    }
    if (!(horizon_ > 0.0)) {
        throw std::invalid_argument("JumpDriftPath: horizon must be positive");
    }
    double prev = -1.0;
    std::size_t d = segments_.front().value_at_start.dim();
    for (const Segment& s : segments_) {
        if (!(s.start > prev)) {
            throw std::invalid_argument("JumpDriftPath: segment starts must be strictly increasing");
        }
        if (s.start > horizon_) {
            throw std::invalid_argument("JumpDriftPath: segment start beyond horizon");
        }
        if (s.value_at_start.dim() != d || s.slope.dim() != d) {
            throw std::invalid_argument("JumpDriftPath: dimension mismatch");
        }
        prev = s.start;
    }
}

void JumpDriftPath::check_domain(double t) const {
    if (t < 0.0 || t > horizon_) {
        throw std::domain_error("JumpDriftPath: t outside [0, horizon]");
    }
}

std::size_t JumpDriftPath::segment_index(double t) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const Segment& s) { return x < s.start; });
    return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

VectorValue JumpDriftPath::value(double t) const {
    check_domain(t);
    const Segment& s = segments_[segment_index(t)];
    return s.value_at_start + (t - s.start) * s.slope;
}

VectorValue JumpDriftPath::left_limit(double t) const {
    check_domain(t);
    std::size_t i = segment_index(t);
    if (t == segments_[i].start && i > 0) {
        const Segment& p = segments_[i - 1];
        return p.value_at_start + (t - p.start) * p.slope;
    }
    const Segment& s = segments_[i];
    return s.value_at_start + (t - s.start) * s.slope;
}

}  // namespace stochint
