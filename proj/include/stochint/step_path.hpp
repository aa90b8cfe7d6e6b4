#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "stochint/vector_value.hpp"

namespace stochint {

enum class Continuity {
    right_continuous,  // cadlag: value(t) includes the jump at t
    left_continuous,   // caglad: value(t) is the pre-jump value at t
};

// Piecewise-constant path on [0, horizon] with finitely many value changes.
// Right-continuous paths are the cadlag processes themselves; left-continuous
// ones arise as predictable versions (left-limit projections, dyadic shifts).
// Both orientations agree on the open intervals between events, so every
// interval-based integral below is orientation-independent.
class StepPath {
public:
    struct Event {
        double time;
        VectorValue value;  // value after the change
    };

    StepPath(VectorValue initial, std::vector<Event> events, double horizon,
             Continuity continuity = Continuity::right_continuous);

    static StepPath constant(VectorValue v, double horizon);

    static StepPath scalar(double initial, std::vector<std::pair<double, double>> events,
                           double horizon, Continuity continuity = Continuity::right_continuous);

    std::size_t dim() const { return initial_.dim(); }
    double horizon() const { return horizon_; }
    Continuity continuity() const { return continuity_; }
    const VectorValue& initial() const { return initial_; }
    const std::vector<Event>& events() const { return events_; }

    // Evaluation per the path's continuity convention. Requires t in [0, horizon].
    const VectorValue& value(double t) const;

    // Value just before t: value-after of the last event with time < t.
    // Convention: left_limit(0) = initial.
    const VectorValue& left_limit(double t) const;

    // Value just after t: value-after of the last event with time <= t.
    // This is the constant taken on the open interval (t, next event), for
    // either continuity convention.
    const VectorValue& value_from_right(double t) const;

    VectorValue jump(double t) const { return value(t) - left_limit(t); }

    double scalar_value(double t) const { return value(t).scalar(); }
    double scalar_left_limit(double t) const { return left_limit(t).scalar(); }

    std::vector<double> event_times() const;

    // Same times and continuity, values transformed pointwise.
    template <typename Fn>
    StepPath map_values(Fn&& fn) const {
        std::vector<Event> mapped(events_);
        for (Event& e : mapped) e.value = fn(e.value);
        return StepPath(fn(initial_), std::move(mapped), horizon_, continuity_);
    }

private:
    void check_domain(double t) const;
    // Index of the last event with time <= t (strict = false) or < t (true);
    // npos when there is none.
    std::size_t last_event_before(double t, bool strict) const;

    VectorValue initial_;
    std::vector<Event> events_;
    double horizon_;
    Continuity continuity_;
};

}  // namespace stochint
