#include "stochint/time_grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace stochint {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::invalid_argument("TimeGrid: need at least 2 points");
    }
    if (points_.front() != 0.0) {
        throw std::invalid_argument("TimeGrid: first point must be 0");
    }
    for (std::size_t k = 1; k < points_.size(); ++k) {
        if (!(points_[k] > points_[k - 1])) {
            throw std::invalid_argument("TimeGrid: points must be strictly increasing");
        }
    }
    if (!(points_.back() > 0.0)) {
        throw std::invalid_argument("TimeGrid: horizon must be positive");
    }
}

TimeGrid TimeGrid::uniform(double t_end, std::size_t cells) {
    if (!(t_end > 0.0)) throw std::invalid_argument("TimeGrid::uniform: t_end must be positive");
    if (cells < 1) throw std::invalid_argument("TimeGrid::uniform: need at least 1 cell");
    std::vector<double> pts(cells + 1);
    for (std::size_t k = 0; k <= cells; ++k) {
        pts[k] = t_end * static_cast<double>(k) / static_cast<double>(cells);
    }
    pts.front() = 0.0;
    pts.back() = t_end;
    return TimeGrid(std::move(pts));
}

std::size_t TimeGrid::cell_index(double t) const {
    if (t < 0.0 || t > t_end()) {
        throw std::domain_error("TimeGrid::cell_index: t outside [0, t_end]");
    }
    auto it = std::upper_bound(points_.begin(), points_.end(), t);
    return static_cast<std::size_t>(it - points_.begin()) - 1;
}

bool TimeGrid::contains_point(double t) const {
    return std::binary_search(points_.begin(), points_.end(), t);
}

TimeGrid TimeGrid::refined(std::span<const double> extra) const {
    for (double t : extra) {
        if (t < 0.0 || t > t_end()) {
            throw std::domain_error("TimeGrid::refined: extra point outside [0, t_end]");
        }
    }
    std::vector<double> merged(points_);
    merged.insert(merged.end(), extra.begin(), extra.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return TimeGrid(std::move(merged));
}

}  // namespace stochint
