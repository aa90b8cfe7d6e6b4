#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stochint/drivers.hpp"
#include "stochint/jump_drift_path.hpp"
#include "stochint/projection.hpp"
#include "stochint/sampled_path.hpp"
#include "stochint/step_path.hpp"

namespace stochint {

enum class DriverKind { wiener, q_wiener, compensated_poisson, prm };

// Running integral t |-> I_t together with its provenance. Wiener-type
// integrals are carried on the driver grid; finite-activity integrals are
// carried exactly as jumps plus compensator drift.
struct IntegralProcess {
    std::variant<SampledPath, JumpDriftPath> path;
    DriverKind driver_kind;
    std::string integrand_descriptor;

    // For sampled carriers t must be a grid point; jump-drift carriers
    // evaluate exactly anywhere in [0, horizon].
    VectorValue value(double t) const;
    double scalar_value(double t) const { return value(t).scalar(); }
    double horizon() const;
    VectorValue terminal() const { return value(horizon()); }
};

// Which predictable version of an adapted integrand feeds the elementary
// integral: the left-limit projection (canonical for cadlag integrands, by
// the projection identity) or the dyadic shift at a given level and anchor.
struct ProjectionChoice {
    enum class Mode { left_limit, dyadic };

    Mode mode = Mode::left_limit;
    DyadicApproxParams dyadic{};

    static ProjectionChoice left_limit() { return {}; }
    static ProjectionChoice dyadic_shifted(int level, double anchor = 0.0) {
        return {Mode::dyadic, {level, anchor}};
    }
};

// --- elementary (simple-predictable) integrals ------------------------------

// I_t = sum_i phi(t_i) (W_{t_{i+1} ^ t} - W_{t_i ^ t}) for a step integrand
// anchored on the driver grid. Every integrand change time must be a grid
// point; otherwise a cell value would not be determined at its left endpoint.
IntegralProcess ito_simple(const StepPath& integrand, const SampledPath& driver);

// Same against the compensated Poisson martingale, evaluated exactly:
// atom sums use the integrand's value at the atom (which for the required
// left-continuous orientation is the pre-jump value), the compensator is an
// exact interval sum. Integrands with events must be left-continuous.
IntegralProcess ito_simple(const StepPath& integrand, const CompensatedPoisson& driver);

// --- extended integrals (adapted integrands) --------------------------------

IntegralProcess ito_extended(const StepPath& integrand, const SampledPath& driver,
                             const ProjectionChoice& mode);
IntegralProcess ito_extended(const StepPath& integrand, const CompensatedPoisson& driver,
                             const ProjectionChoice& mode);

// --- pathwise Lebesgue-Stieltjes integral (contrast) -------------------------

// Pathwise integral using the integrand's own value at jump times (the
// post-jump value for cadlag integrands). Exists only for finite-variation
// drivers.
IntegralProcess lebesgue_stieltjes(const StepPath& integrand, const CompensatedPoisson& driver);

// No pathwise Lebesgue-Stieltjes integral exists against a Wiener path;
// always throws UnsupportedDriver.
IntegralProcess lebesgue_stieltjes(const StepPath& integrand, const SampledPath& driver);

// --- Q-Wiener integrals ------------------------------------------------------

// Hilbert-Schmidt operator between the truncated spaces: columns are images
// of the covariance eigenbasis.
class HsOperator {
public:
    HsOperator(std::size_t rows, std::size_t cols);
    static HsOperator identity(std::size_t n);
    static HsOperator diagonal(std::vector<double> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    void apply(std::span<const double> x, std::span<double> out) const;

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

// sqrt(sum_j lambda_j ||op e_j||^2), the natural integrand norm for Q-Wiener
// integrals.
double hs_norm(const HsOperator& op, const QSpec& q);

// Piecewise-constant operator-valued integrand: op[i] acts on
// (anchor[i], anchor[i+1]], anchored at the left endpoint.
class OperatorStepFunction {
public:
    OperatorStepFunction(std::vector<double> anchors, std::vector<HsOperator> ops);
    static OperatorStepFunction constant(HsOperator op);

    const std::vector<double>& anchors() const { return anchors_; }
    const std::vector<HsOperator>& ops() const { return ops_; }
    std::size_t rows() const { return ops_.front().rows(); }
    std::size_t cols() const { return ops_.front().cols(); }

    // Operator governing the cell that starts at u.
    const HsOperator& at_cell_start(double u) const;

    // Exact int_0^T ||op(s)||_{L02}^2 ds, the deterministic side of the
    // isometry.
    double squared_hs_time_integral(const QSpec& q, double horizon) const;

private:
    std::vector<double> anchors_;
    std::vector<HsOperator> ops_;
};

IntegralProcess qwiener_integral(const OperatorStepFunction& integrand, const SampledPath& driver);

// --- compensated Poisson random measure integrals ---------------------------

// Integrand Phi(s-, x): piecewise constant in time (so the compensator is an
// exact interval sum), an arbitrary function of the mark within each cell.
// Atom evaluations use the cell whose half-open interval (a_i, a_{i+1}]
// contains the atom time, i.e. state determined strictly before the atom.
class PrmIntegrand {
public:
    using MarkFn = std::function<VectorValue(double mark)>;

    PrmIntegrand(std::vector<double> anchors, std::vector<MarkFn> cells, std::size_t dim);
    static PrmIntegrand time_constant(MarkFn fn, std::size_t dim);

    std::size_t dim() const { return dim_; }
    const std::vector<double>& anchors() const { return anchors_; }

    const MarkFn& cell_for_atom(double atom_time) const;   // last anchor < t
    const MarkFn& cell_at_start(double u) const;           // last anchor <= u

private:
    std::vector<double> anchors_;
    std::vector<MarkFn> cells_;
    std::size_t dim_;
};

// I_t = sum_{atoms <= t} Phi(tau_i-, xi_i) - int_0^t int_E Phi(s-, x) beta(dx) ds.
IntegralProcess prm_integral(const PrmIntegrand& integrand, const PrmRealization& prm);

// Exact E int_0^T int_E ||Phi(s,x)||^2 beta(dx) ds for deterministic
// integrands, the beta side of the PRM isometry.
double prm_squared_compensator_integral(const PrmIntegrand& integrand, const MarkSpace& ms,
                                        double horizon);

// --- bracket integral --------------------------------------------------------

// Exact int_0^T ||phi_s||^2 d<M,M>_s for a step integrand; the right-hand
// side of the Ito isometry for scalar martingale drivers.
double bracket_integral(const StepPath& integrand, const MartingaleDriver& driver);

}  // namespace stochint
