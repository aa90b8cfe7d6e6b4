#pragma once

#include <cstdint>

namespace stochint {

// (value, stream) fully determines every draw. Monte Carlo runs assign one
// stream per path, so ensembles can be generated in any order, or in
// parallel, and still reproduce bit-for-bit.
struct Seed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;

    Seed with_stream(std::uint64_t s) const { return Seed{value, s}; }
};

// SplitMix64 with a per-stream odd increment ("gamma") derived as in Steele,
// Lea & Flood, "Fast splittable pseudorandom number generators". Normal
// variates use the AS241 inverse CDF, one uniform per variate, so the draw
// count per sample is fixed and platform-independent.
class Rng {
public:
    explicit Rng(Seed seed);

    std::uint64_t next_u64();

    // 53-bit uniform on [0, 1).
    double next_double();

    // Uniform on the open interval (0, 1); safe for inverse-CDF transforms.
    double next_open_double();

    double next_normal();

    double next_exponential(double rate);

    // Knuth's product method, chunked so the running product never
    // underflows. Exact for any finite mean.
    std::uint64_t next_poisson(double mean);

private:
    std::uint64_t next_poisson_chunk(double mean);

    std::uint64_t state_;
    std::uint64_t gamma_;
};

// AS241 (Wichura): quantile of the standard normal, accurate to roughly
// 1e-15 over (0, 1). Exposed for test oracles.
double normal_quantile(double u);

}  // namespace stochint
