#pragma once

#include <cstdint>
#include <vector>

#include "stochint/rng.hpp"
#include "stochint/step_path.hpp"

namespace stochint::test {

// Hand-rolled generator for property-style tests: a scalar step path with a
// random number of jumps at random times and integer-ish values.
inline StepPath random_step_path(std::uint64_t index, double horizon = 1.0,
                                 std::size_t max_jumps = 8) {
    Rng rng(Seed{0xA11CE5EEDULL, index});
    std::size_t jumps = rng.next_u64() % (max_jumps + 1);
    std::vector<double> times(jumps);
    for (auto& t : times) t = rng.next_open_double() * horizon;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<std::pair<double, double>> events;
    double value = static_cast<double>(rng.next_u64() % 5);
    double initial = value;
    for (double t : times) {
        value += 1.0 + static_cast<double>(rng.next_u64() % 3);
        if (rng.next_double() < 0.3) value -= 2.0;
        events.emplace_back(t, value);
    }
    return StepPath::scalar(initial, std::move(events), horizon);
}

}  // namespace stochint::test
