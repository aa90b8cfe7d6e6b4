#include "stochint/sampled_path.hpp"

#include <stdexcept>

namespace stochint {

SampledPath::SampledPath(TimeGrid grid, std::size_t dim)
    : grid_(std::move(grid)), dim_(dim), data_(grid_.size() * dim, 0.0) {
    if (dim_ == 0) throw std::invalid_argument("SampledPath: dim must be positive");
}

double SampledPath::scalar_at(std::size_t k) const {
    if (dim_ != 1) throw std::invalid_argument("SampledPath::scalar_at: dimension is not 1");
    return data_[k];
}

VectorValue SampledPath::value_at(std::size_t k) const {
    auto row = at(k);
    return VectorValue(std::vector<double>(row.begin(), row.end()));
}

StepPath SampledPath::as_step_path() const {
    std::vector<StepPath::Event> events;
    events.reserve(grid_.size() - 1);
    for (std::size_t k = 1; k < grid_.size(); ++k) {
        events.push_back({grid_[k], value_at(k)});
    }
    return StepPath(value_at(0), std::move(events), grid_.t_end());
}

}  // namespace stochint
