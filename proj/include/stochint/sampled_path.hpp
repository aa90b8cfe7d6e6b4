#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stochint/step_path.hpp"
#include "stochint/time_grid.hpp"
#include "stochint/vector_value.hpp"

namespace stochint {

// Vector-valued path observed on a time grid. Storage is flat, one row of
// `dim` coordinates per grid point, so large Monte Carlo runs do not allocate
// per point.
class SampledPath {
public:
    SampledPath(TimeGrid grid, std::size_t dim);

    const TimeGrid& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }

    std::span<double> at(std::size_t k) { return {data_.data() + k * dim_, dim_}; }
    std::span<const double> at(std::size_t k) const { return {data_.data() + k * dim_, dim_}; }

    double scalar_at(std::size_t k) const;
    VectorValue value_at(std::size_t k) const;

    // Piecewise-constant cadlag view: value on [t_k, t_{k+1}) is the sample
    // at t_k. The step carrier is the discrete object all exact interval
    // integrals operate on.
    StepPath as_step_path() const;

private:
    TimeGrid grid_;
    std::size_t dim_;
    std::vector<double> data_;
};

}  // namespace stochint
