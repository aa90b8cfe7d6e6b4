#pragma once

namespace stochint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stochint
