#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stochint/drivers.hpp"
#include "stochint/rng.hpp"
#include "stochint/sampled_path.hpp"
#include "stochint/time_grid.hpp"
#include "stochint/vector_value.hpp"

namespace stochint {

// dr = (A r + alpha(t, r)) dt + sigma(t, r) dW + int_E gamma(t, x, r) q(dt, dx)
// on a diagonalizable generator: A e_j = -mu_j e_j, so the semigroup acts as
// exp(-mu_j t) per mode. Coefficients write into caller-owned buffers so the
// per-cell loop does not allocate.
struct SpdeSpec {
    // out = alpha(t, r); empty means zero drift.
    using DriftFn = std::function<void(double t, std::span<const double> r, std::span<double> out)>;
    // out = sigma(t, r) dw; empty means no Gaussian noise.
    using DiffusionFn = std::function<void(double t, std::span<const double> r,
                                           std::span<const double> dw, std::span<double> out)>;
    // out = gamma(t, mark, r); empty means no jump noise.
    using JumpFn = std::function<void(double t, double mark, std::span<const double> r,
                                      std::span<double> out)>;

    std::vector<double> generator_eigs;  // mu_j > 0
    std::size_t modes = 0;               // Galerkin dimension
    VectorValue h0;                      // initial condition, dim == modes
    TimeGrid grid = TimeGrid::uniform(1.0, 1);

    DriftFn alpha;
    DiffusionFn sigma;
    std::optional<QSpec> qspec;  // required with sigma
    JumpFn gamma;
    std::optional<MarkSpace> mark_space;  // required with gamma

    double horizon() const { return grid.t_end(); }
    void validate() const;
};

// One noise realization: PRM atoms, the base grid refined so every atom time
// is a grid point, and Q-Wiener increments per refined cell. Exposed so tests
// can splice noise and check adaptedness of the solution map.
struct SpdeNoise {
    TimeGrid grid = TimeGrid::uniform(1.0, 1);
    std::size_t qdim = 0;
    std::vector<double> dw;  // cells x qdim, row-major
    std::vector<PrmAtom> atoms;

    std::span<const double> dw_at(std::size_t cell) const {
        return {dw.data() + cell * qdim, qdim};
    }
};

SpdeNoise simulate_spde_noise(const SpdeSpec& spec, Seed seed);

enum class SolveMode { mild_step, picard };

struct SolveReport {
    SampledPath trajectory;  // mode coordinates on the refined grid
    std::vector<double> picard_residuals;  // sup-norm gaps between iterates
    SolveMode mode = SolveMode::mild_step;
    bool converged = true;  // false only for a Picard run that hit max_iters
};

// One forward sweep of the exponential (exact-semigroup-per-cell) scheme:
//   r <- exp(-mu dt) * (r + alpha dt + sigma dW + sum_cell_atoms gamma
//                         - (int_E gamma dbeta) dt),
// coefficients frozen at the cell's left endpoint.
SolveReport mild_step_solve(const SpdeSpec& spec, const SpdeNoise& noise);
SolveReport mild_step_solve(const SpdeSpec& spec, Seed seed);

// Fixed-point iteration of the discrete mild map with the same noise
// realization: coefficients are evaluated along the previous iterate. Agrees
// with mild_step_solve at the fixed point; non-convergence is reported, not
// thrown.
SolveReport picard_solve(const SpdeSpec& spec, const SpdeNoise& noise, std::size_t max_iters,
                         double tol);
SolveReport picard_solve(const SpdeSpec& spec, Seed seed, std::size_t max_iters, double tol);

// Exact per-mode variance of the linear additive-noise equation,
// sigma_jj^2 lambda_j (1 - exp(-2 mu_j t)) / (2 mu_j): the closed-form side
// of the moment-matching experiments, independent of the discrete scheme.
double ou_mode_variance(double generator_eig, double sigma_jj, double lambda_j, double t);

}  // namespace stochint
