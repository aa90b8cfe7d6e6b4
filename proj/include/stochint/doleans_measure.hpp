#pragma once

#include <cstddef>
#include <vector>

#include "stochint/step_path.hpp"

namespace stochint {

// Product measure mu = P (x) K on Omega x [0,T], where the time kernel has a
// deterministic, piecewise-constant density: K([a,b]) = int_a^b f(t) dt. The
// exponent p of the ambient L^p space travels with the measure. All driver
// instantiations use constant densities (Lebesgue, or scaled by a bracket or
// jump intensity); the exhausting sequence of the sigma-finite setting is
// degenerate because every implemented kernel has finite total mass.
class DoleansMeasure {
public:
    static DoleansMeasure lebesgue(double horizon, double p);
    static DoleansMeasure constant_density(double horizon, double density, double p);
    // Density given as a scalar step path on [0, horizon].
    static DoleansMeasure piecewise(const StepPath& density, double p);

    double horizon() const { return breaks_.back(); }
    double p() const { return p_; }

    // K([a,b]), exact cell-by-cell.
    double kernel_mass(double a, double b) const;
    double total_mass() const { return kernel_mass(0.0, horizon()); }

    // Density cells: value on (breaks[i], breaks[i+1]) is density_in_cell(i).
    const std::vector<double>& breakpoints() const { return breaks_; }
    double density_in_cell(std::size_t i) const { return density_[i]; }

private:
    DoleansMeasure(std::vector<double> breaks, std::vector<double> density, double p);

    std::vector<double> breaks_;   // 0 = b_0 < ... < b_m = horizon
    std::vector<double> density_;  // one value per cell
    double p_;
};

// int_0^T ||path(t)||^p K(dt) for one realization, summed exactly over the
// constancy intervals of the path and the density.
double exact_lp_integral(const StepPath& path, const DoleansMeasure& mu);

// Same, restricted to the window [t0, t1].
double exact_lp_integral(const StepPath& path, const DoleansMeasure& mu, double t0, double t1);

// int_0^T ||a(t) - b(t)||^p K(dt). Computed on the merged constancy
// intervals, so paths that agree off a finite set of times give exactly 0.
double lp_distance(const StepPath& a, const StepPath& b, const DoleansMeasure& mu);

// Lebesgue measure of {t in [0,T] : a(t) != b(t)}, up to the finite set of
// interval endpoints (which are Lebesgue-null).
double measure_where_different(const StepPath& a, const StepPath& b);

}  // namespace stochint
