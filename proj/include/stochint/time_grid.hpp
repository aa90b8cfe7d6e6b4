#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stochint {

// Strictly increasing time points on [0, t_end], first point 0, last t_end.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> points);

    static TimeGrid uniform(double t_end, std::size_t cells);

    double t_end() const { return points_.back(); }
    std::size_t size() const { return points_.size(); }
    std::size_t cells() const { return points_.size() - 1; }
    double operator[](std::size_t k) const { return points_[k]; }
    const std::vector<double>& points() const { return points_; }

    double dt(std::size_t cell) const { return points_[cell + 1] - points_[cell]; }

    // Largest k with points[k] <= t. Requires 0 <= t <= t_end.
    std::size_t cell_index(double t) const;

    // Exact membership test.
    bool contains_point(double t) const;

    // Merged, sorted, deduplicated grid containing both point sets.
    TimeGrid refined(std::span<const double> extra) const;

private:
    std::vector<double> points_;
};

}  // namespace stochint
