#include "stochint/spde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochint/errors.hpp"

namespace stochint {

void SpdeSpec::validate() const {
    if (modes == 0) throw std::invalid_argument("SpdeSpec: modes must be positive");
    if (modes > generator_eigs.size()) {
        throw std::invalid_argument("SpdeSpec: modes exceeds generator spectrum length");
    }
    for (std::size_t j = 0; j < modes; ++j) {
        if (!(generator_eigs[j] > 0.0)) {
            throw std::invalid_argument("SpdeSpec: generator eigenvalues must be positive");
        }
    }
    if (h0.dim() != modes) throw std::invalid_argument("SpdeSpec: h0 dimension must equal modes");
    if (sigma && !qspec) throw std::invalid_argument("SpdeSpec: sigma requires a QSpec");
    if (qspec && modes > qspec->dim()) {
        throw std::invalid_argument("SpdeSpec: modes exceeds noise spectrum length");
    }
    if (gamma && !mark_space) throw std::invalid_argument("SpdeSpec: gamma requires a mark space");
}

SpdeNoise simulate_spde_noise(const SpdeSpec& spec, Seed seed) {
    spec.validate();
    Rng rng(seed);
    SpdeNoise noise;
    if (spec.gamma) {
        noise.atoms = simulate_prm_atoms(*spec.mark_space, spec.horizon(), rng);
    }
    std::vector<double> atom_times;
    atom_times.reserve(noise.atoms.size());
    for (const auto& a : noise.atoms) atom_times.push_back(a.time);
    noise.grid = spec.grid.refined(atom_times);

    if (spec.sigma) {
        noise.qdim = spec.qspec->dim();
        noise.dw.resize(noise.grid.cells() * noise.qdim);
        for (std::size_t k = 0; k < noise.grid.cells(); ++k) {
            double dt = noise.grid.dt(k);
            for (std::size_t j = 0; j < noise.qdim; ++j) {
                noise.dw[k * noise.qdim + j] =
                    std::sqrt(spec.qspec->eigenvalues()[j] * dt) * rng.next_normal();
            }
        }
    }
    return noise;
}

namespace {

// Per-cell decay factors exp(-mu_j dt), memoized on the cell width. Uniform
// base grids hit the cache; cells split by atom refinement recompute.
class DecayCache {
public:
    DecayCache(std::span<const double> eigs, std::size_t modes)
        : eigs_(eigs), modes_(modes), dt_(-1.0), decay_(modes) {}

    std::span<const double> at(double dt) {
        if (dt != dt_) {
            for (std::size_t j = 0; j < modes_; ++j) decay_[j] = std::exp(-eigs_[j] * dt);
            dt_ = dt;
        }
        return decay_;
    }

private:
    std::span<const double> eigs_;
    std::size_t modes_;
    double dt_;
    std::vector<double> decay_;
};

// One forward sweep of the discrete mild formula. Coefficients are evaluated
// along `frozen` (the previous Picard iterate); passing the output trajectory
// itself recovers the one-pass scheme, because cell k only reads row k.
void mild_sweep(const SpdeSpec& spec, const SpdeNoise& noise, const SampledPath& frozen,
                SampledPath& out) {
    const TimeGrid& grid = noise.grid;
    const std::size_t m = spec.modes;

    DecayCache decay(spec.generator_eigs, m);
    std::vector<double> accum(m), buf(m), comp(m), scratch(m);

    for (std::size_t j = 0; j < m; ++j) out.at(0)[j] = spec.h0[j];

    std::size_t next_atom = 0;
    for (std::size_t k = 0; k < grid.cells(); ++k) {
        const double t = grid[k];
        const double dt = grid.dt(k);
        auto state = frozen.at(k);
        auto row = out.at(k);
        for (std::size_t j = 0; j < m; ++j) accum[j] = row[j];

        if (spec.alpha) {
            spec.alpha(t, state, buf);
            for (std::size_t j = 0; j < m; ++j) accum[j] += buf[j] * dt;
        }
        if (spec.sigma) {
            spec.sigma(t, state, noise.dw_at(k), buf);
            for (std::size_t j = 0; j < m; ++j) accum[j] += buf[j];
        }
        if (spec.gamma) {
            // Atoms in (t_k, t_{k+1}]; the refined grid puts each atom at a
            // cell's right endpoint.
            const double t_next = grid[k + 1];
            while (next_atom < noise.atoms.size() && noise.atoms[next_atom].time <= t_next) {
                spec.gamma(t, noise.atoms[next_atom].mark, state, buf);
                for (std::size_t j = 0; j < m; ++j) accum[j] += buf[j];
                ++next_atom;
            }
            spec.mark_space->integrate_into(
                [&](double x, std::span<double> g) { spec.gamma(t, x, state, g); }, comp, scratch);
            for (std::size_t j = 0; j < m; ++j) accum[j] -= comp[j] * dt;
        }

        auto a = decay.at(dt);
        auto next = out.at(k + 1);
        for (std::size_t j = 0; j < m; ++j) {
            double v = a[j] * accum[j];
            if (!std::isfinite(v)) {
                throw DivergenceError("SPDE state left the finite range", k);
            }
            next[j] = v;
        }
    }
}

}  // namespace

SolveReport mild_step_solve(const SpdeSpec& spec, const SpdeNoise& noise) {
    spec.validate();
    SampledPath trajectory(noise.grid, spec.modes);
    // The one-pass scheme is its own fixed point: cell k reads only row k,
    // which the sweep has already written.
    mild_sweep(spec, noise, trajectory, trajectory);
    return {std::move(trajectory), {}, SolveMode::mild_step, true};
}

SolveReport mild_step_solve(const SpdeSpec& spec, Seed seed) {
    return mild_step_solve(spec, simulate_spde_noise(spec, seed));
}

SolveReport picard_solve(const SpdeSpec& spec, const SpdeNoise& noise, std::size_t max_iters,
                         double tol) {
    spec.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
    if (max_iters == 0) throw std::invalid_argument("picard_solve: max_iters must be positive");

    // Iterate 0: the constant initial condition.
    SampledPath prev(noise.grid, spec.modes);
    for (std::size_t k = 0; k < noise.grid.size(); ++k) {
        for (std::size_t j = 0; j < spec.modes; ++j) prev.at(k)[j] = spec.h0[j];
    }

    std::vector<double> residuals;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        SampledPath next(noise.grid, spec.modes);
        mild_sweep(spec, noise, prev, next);
        double gap = 0.0;
        for (std::size_t k = 0; k < noise.grid.size(); ++k) {
            auto a = prev.at(k);
            auto b = next.at(k);
            for (std::size_t j = 0; j < spec.modes; ++j) {
                gap = std::max(gap, std::fabs(a[j] - b[j]));
            }
        }
        residuals.push_back(gap);
        prev = std::move(next);
        if (gap < tol) {
            return {std::move(prev), std::move(residuals), SolveMode::picard, true};
        }
    }
    return {std::move(prev), std::move(residuals), SolveMode::picard, false};
}

SolveReport picard_solve(const SpdeSpec& spec, Seed seed, std::size_t max_iters, double tol) {
    return picard_solve(spec, simulate_spde_noise(spec, seed), max_iters, tol);
}

double ou_mode_variance(double generator_eig, double sigma_jj, double lambda_j, double t) {
    return sigma_jj * sigma_jj * lambda_j * (1.0 - std::exp(-2.0 * generator_eig * t)) /
           (2.0 * generator_eig);
}

}  // namespace stochint
