#pragma once

#include <cstddef>
#include <vector>

#include "stochint/vector_value.hpp"

namespace stochint {

// Cadlag path assembled from affine segments: on [start_i, start_{i+1}) the
// value is value_at_start_i + slope_i * (t - start_i), with a possible jump
// at each segment start. This is the exact carrier for running integrals
// against finite-activity drivers, which are atom sums plus an absolutely
// continuous compensator drift.
class JumpDriftPath {
public:
    struct Segment {
        double start;
        VectorValue value_at_start;  // value at start, after any jump there
        VectorValue slope;
    };

    JumpDriftPath(std::vector<Segment> segments, double horizon);

    std::size_t dim() const { return segments_.front().value_at_start.dim(); }
    double horizon() const { return horizon_; }
    const std::vector<Segment>& segments() const { return segments_; }

    VectorValue value(double t) const;
    VectorValue left_limit(double t) const;  // left_limit(0) = value(0)
    VectorValue jump(double t) const { return value(t) - left_limit(t); }

    double scalar_value(double t) const { return value(t).scalar(); }
    double scalar_left_limit(double t) const { return left_limit(t).scalar(); }

private:
    void check_domain(double t) const;
    std::size_t segment_index(double t) const;

    std::vector<Segment> segments_;
    double horizon_;
};

}  // namespace stochint
