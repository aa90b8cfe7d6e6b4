#pragma once

#include <cstddef>
#include <functional>

namespace stochint {

// Runs fn(i) for i in [0, n), chunked contiguously across `threads` workers.
// Each index owns its own output slot and seeds carry the path index, so the
// result is identical for any thread count; reductions happen afterwards in
// index order.
void for_each_index(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace stochint
