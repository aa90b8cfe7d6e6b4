#pragma once

#include "stochint/doleans_measure.hpp"
#include "stochint/step_path.hpp"

namespace stochint {

// Parameters of the dyadic-shift approximation: resolution level n and the
// anchor s the dyadic mesh is pinned to. Every anchor works for the path
// classes implemented here; 0 is the default.
struct DyadicApproxParams {
    int level = 0;
    double anchor = 0.0;
};

// Radial norm cap at the given level (>= 1).
struct TruncationSpec {
    explicit TruncationSpec(double level);
    double level;
};

// Left endpoint of the dyadic cell of width 2^-n containing t: returns
// (j-1)/2^n for the unique j with t in ((j-1)/2^n, j/2^n]. Exact in floating
// point (all quantities are scaled by powers of two), defined on all of R,
// and satisfies theta_n(t) < t <= theta_n(t) + 2^-n.
double theta(int level, double t);

// Grid-snapped path t |-> path(s + theta_n(t - s)), extended by zero outside
// [0, horizon]. The output is constant on each cell (s+(j-1)/2^n, s+j/2^n]
// with the value read at the cell's left endpoint, hence left-continuous and
// predictable by construction. Consecutive equal cells are merged.
StepPath dyadic_shift(const StepPath& path, const DyadicApproxParams& params);

// Radial cap: values of norm larger than the level are rescaled onto the
// sphere of that radius; direction is preserved. Scalar paths recover the
// usual min(v, level) for v >= 0.
StepPath truncate(const StepPath& path, const TruncationSpec& spec);

// The predictable projection of a cadlag step path: same change times, values
// lagged to the left limits, i.e. the left-continuous version. Idempotent,
// and equal to the input off the (Lebesgue-null) set of jump times.
StepPath project_left_limit(const StepPath& path);

struct MuAeResult {
    double distance;  // int ||a - b||^p dmu, exact
    bool equal;       // distance <= tol
};

// Decides mu-a.e. equality by exact interval integration rather than
// sampling; with tol = 0 this is an exact assertion.
MuAeResult mu_ae_equal(const StepPath& a, const StepPath& b, const DoleansMeasure& mu,
                       double tol);

}  // namespace stochint
