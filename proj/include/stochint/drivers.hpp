#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stochint/rng.hpp"
#include "stochint/sampled_path.hpp"
#include "stochint/step_path.hpp"
#include "stochint/time_grid.hpp"

namespace stochint {

// Spectrum of a trace-class covariance operator, eigenvalues nonincreasing
// and strictly positive; the eigenvectors are the canonical basis vectors of
// the truncated space.
class QSpec {
public:
    explicit QSpec(std::vector<double> eigenvalues);

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    std::size_t dim() const { return eigenvalues_.size(); }
    double trace() const;

private:
    std::vector<double> eigenvalues_;
};

// Square-integrable martingale driver with absolutely continuous bracket
// <M,M>_t = bracket_density * t. The bracket density is the kernel density
// of the associated Doleans measure.
struct MartingaleDriver {
    enum class Kind { wiener, compensated_poisson };

    Kind kind;
    double bracket_density;

    static MartingaleDriver wiener(double variance_rate);
    static MartingaleDriver compensated_poisson(double intensity);
};

// Mark space (E, beta) with finite total mass: either finitely many weighted
// marks, or an interval with a piecewise-constant intensity density. Finite
// activity keeps atom lists exact.
class MarkSpace {
public:
    struct WeightedMark {
        double value;
        double weight;
    };

    static MarkSpace finite(std::vector<WeightedMark> marks);
    static MarkSpace interval(double lo, double hi, double density);
    static MarkSpace interval(std::vector<double> cuts, std::vector<double> density);

    double total_mass() const { return total_mass_; }
    bool finite_support() const { return finite_; }
    const std::vector<WeightedMark>& marks() const { return marks_; }

    // One mark distributed as beta / beta(E).
    double sample(Rng& rng) const;

    // int_E fn(x) beta(dx): an exact weighted sum for finite supports,
    // composite Gauss-Legendre per density cell otherwise.
    double integrate(const std::function<double(double)>& fn) const;

    // Vector version: accumulates sum_E fn(x, .) beta(dx) into out.
    // `scratch` must have out.size() elements.
    void integrate_into(const std::function<void(double, std::span<double>)>& fn,
                        std::span<double> out, std::span<double> scratch) const;

private:
    MarkSpace() = default;

    bool finite_ = true;
    double total_mass_ = 0.0;
    std::vector<WeightedMark> marks_;   // finite case
    std::vector<double> cuts_;          // interval case: cell boundaries
    std::vector<double> density_;       // one density value per cell
    std::vector<double> cum_weights_;   // sampling table (per mark or per cell)
};

struct PrmAtom {
    double time;
    double mark;
};

// One realization of a Poisson random measure on (0, T] x E: a finite atom
// list together with the intensity that generated it.
class PrmRealization {
public:
    PrmRealization(std::vector<PrmAtom> atoms, MarkSpace mark_space, double horizon);

    const std::vector<PrmAtom>& atoms() const { return atoms_; }
    const MarkSpace& mark_space() const { return mark_space_; }
    double horizon() const { return horizon_; }

    std::size_t count_up_to(double t) const;
    std::vector<double> atom_times() const;

private:
    std::vector<PrmAtom> atoms_;
    MarkSpace mark_space_;
    double horizon_;
};

// Compensated Poisson martingale M_t = N_t - rate * t, kept as the exact
// Stieltjes decomposition dM = dN - rate dt.
class CompensatedPoisson {
public:
    CompensatedPoisson(StepPath counting, double rate);

    double value(double t) const { return counting_.scalar_value(t) - rate_ * t; }
    double left_limit(double t) const { return counting_.scalar_left_limit(t) - rate_ * t; }

    const StepPath& counting() const { return counting_; }
    double rate() const { return rate_; }
    double horizon() const { return counting_.horizon(); }
    std::vector<double> jump_times() const { return counting_.event_times(); }

private:
    StepPath counting_;
    double rate_;
};

// Scalar Wiener path with variance rate c: independent centered Gaussian
// increments of variance c * dt per grid cell.
SampledPath simulate_wiener(const TimeGrid& grid, double variance_rate, Seed seed);

// Spectral construction W_t = sum_j sqrt(lambda_j) beta_j(t) e_j with
// independent scalar Wiener components, truncated at the spectrum length.
SampledPath simulate_q_wiener(const TimeGrid& grid, const QSpec& q, Seed seed);

// Unit-jump counting path with exponential(rate) inter-arrivals on (0, T].
StepPath simulate_poisson(double rate, double horizon, Seed seed);

CompensatedPoisson compensated_path(StepPath counting, double rate);

// Atom count ~ Poisson(beta(E) T); times i.i.d. uniform on (0, T], sorted,
// ties re-drawn; marks i.i.d. beta / beta(E).
PrmRealization simulate_prm(const MarkSpace& ms, double horizon, Seed seed);

// In-place variant reusing a caller-owned generator (used by the SPDE noise
// assembly, which draws atoms and Wiener increments from one stream).
std::vector<PrmAtom> simulate_prm_atoms(const MarkSpace& ms, double horizon, Rng& rng);

}  // namespace stochint
