#include "stochint/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace stochint {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Stafford mix13 variant, as used in SplittableRandom.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix64variant13(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
    return z ^ (z >> 33);
}

// Odd, well-mixed per-stream increment; low-transition gammas are repaired
// per Steele-Lea-Flood.
std::uint64_t mix_gamma(std::uint64_t z) {
    z = mix64variant13(z) | 1ULL;
    int transitions = std::popcount(z ^ (z >> 1));
    if (transitions < 24) z ^= 0xAAAAAAAAAAAAAAAAULL;
    return z;
}

}  // namespace

Rng::Rng(Seed seed)
    : state_(mix64(seed.value)),
      gamma_(mix_gamma(seed.stream * kGoldenGamma + kGoldenGamma)) {}

std::uint64_t Rng::next_u64() {
    state_ += gamma_;
    return mix64(state_);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_open_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_normal() { return normal_quantile(next_open_double()); }

double Rng::next_exponential(double rate) {
    if (!(rate > 0.0)) throw std::domain_error("next_exponential: rate must be positive");
    // -log(1-u) with u in [0,1): strictly positive, never overflows.
    return -std::log1p(-next_double()) / rate;
}

std::uint64_t Rng::next_poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::domain_error("next_poisson: mean must be finite and nonnegative");
    }
    // Poisson(a + b) = Poisson(a) + Poisson(b) for independent summands, so
    // large means are drawn in chunks that keep exp(-chunk) representable.
    constexpr double kChunk = 500.0;
    std::uint64_t total = 0;
    while (mean > kChunk) {
        total += next_poisson_chunk(kChunk);
        mean -= kChunk;
    }
    return total + next_poisson_chunk(mean);
}

std::uint64_t Rng::next_poisson_chunk(double mean) {
    const double threshold = std::exp(-mean);
    std::uint64_t count = 0;
    double prod = next_double();
    while (prod > threshold) {
        ++count;
        prod *= next_double();
    }
    return count;
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("normal_quantile: u must be in (0, 1)");
    }
    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -x : x;
}

}  // namespace stochint
