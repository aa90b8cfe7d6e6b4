#include "stochint/step_path.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stochint {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

StepPath::StepPath(VectorValue initial, std::vector<Event> events, double horizon,
                   Continuity continuity)
    : initial_(std::move(initial)), events_(std::move(events)), horizon_(horizon),
      continuity_(continuity) {
    if (!(horizon_ > 0.0)) {
        throw std::invalid_argument("StepPath: horizon must be positive");
    }
    double prev = 0.0;
    for (const Event& e : events_) {
        if (!(e.time > prev)) {
            throw std::invalid_argument("StepPath: event times must be strictly increasing and > 0");
        }
        if (e.time > horizon_) {
            throw std::invalid_argument("StepPath: event time beyond horizon");
        }
        if (e.value.dim() != initial_.dim()) {
            throw std::invalid_argument("StepPath: event value dimension mismatch");
        }
        prev = e.time;
    }
}

StepPath StepPath::constant(VectorValue v, double horizon) {
    return StepPath(std::move(v), {}, horizon);
}

StepPath StepPath::scalar(double initial, std::vector<std::pair<double, double>> events,
                          double horizon, Continuity continuity) {
    std::vector<Event> evs;
    evs.reserve(events.size());
    for (const auto& [t, v] : events) evs.push_back({t, VectorValue::scalar(v)});
    return StepPath(VectorValue::scalar(initial), std::move(evs), horizon, continuity);
}

void StepPath::check_domain(double t) const {
    if (t < 0.0 || t > horizon_) {
        throw std::domain_error("StepPath: t outside [0, horizon]");
    }
}

std::size_t StepPath::last_event_before(double t, bool strict) const {
    auto cmp = [](const Event& e, double x) { return e.time < x; };
    auto it = strict ? std::lower_bound(events_.begin(), events_.end(), t, cmp)
                     : std::upper_bound(events_.begin(), events_.end(), t,
                                        [](double x, const Event& e) { return x < e.time; });
    if (it == events_.begin()) return npos;
    return static_cast<std::size_t>(it - events_.begin()) - 1;
}

const VectorValue& StepPath::value(double t) const {
    check_domain(t);
    bool strict = (continuity_ == Continuity::left_continuous);
    std::size_t i = last_event_before(t, strict);
    return i == npos ? initial_ : events_[i].value;
}

const VectorValue& StepPath::left_limit(double t) const {
    check_domain(t);
    std::size_t i = last_event_before(t, /*strict=*/true);
    return i == npos ? initial_ : events_[i].value;
}

const VectorValue& StepPath::value_from_right(double t) const {
    check_domain(t);
    std::size_t i = last_event_before(t, /*strict=*/false);
    return i == npos ? initial_ : events_[i].value;
}

std::vector<double> StepPath::event_times() const {
    std::vector<double> ts;
    ts.reserve(events_.size());
    for (const Event& e : events_) ts.push_back(e.time);
    return ts;
}

}  // namespace stochint
