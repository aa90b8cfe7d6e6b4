#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stochint {

// Invalid experiment configuration (bad flag, unknown config key, malformed
// JSON). The CLI maps this to exit code 2, distinct from statistical failures.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An integrand was anchored so that a cell value would depend on information
// past the cell's left endpoint.
class PredictabilityViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The requested integral does not exist for the given driver, e.g. a pathwise
// Lebesgue-Stieltjes integral against a Wiener path of infinite variation.
class UnsupportedDriver : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Non-finite state encountered during an SPDE solve; carries the cell index
// at which the trajectory left the representable range.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, std::size_t cell)
        : std::runtime_error(what), cell_index(cell) {}

    std::size_t cell_index;
};

}  // namespace stochint
