#include "stochint/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochint/errors.hpp"

namespace stochint {

VectorValue IntegralProcess::value(double t) const {
    if (const auto* jd = std::get_if<JumpDriftPath>(&path)) {
        return jd->value(t);
    }
    const auto& sp = std::get<SampledPath>(path);
    std::size_t k = sp.grid().cell_index(t);
    if (sp.grid()[k] != t) {
        throw std::domain_error("IntegralProcess: sampled integral defined at grid points only");
    }
    return sp.value_at(k);
}

double IntegralProcess::horizon() const {
    if (const auto* jd = std::get_if<JumpDriftPath>(&path)) return jd->horizon();
    return std::get<SampledPath>(path).grid().t_end();
}

namespace {

// Assembles the running integral of a finite-activity driver from its jump
// contributions and per-segment compensator slopes. All callers share this
// walk, so algebraically identical integrals agree bit-for-bit.
JumpDriftPath accumulate_jump_drift(double horizon, std::size_t dim,
                                    const std::vector<double>& knots,
                                    const std::function<void(double, VectorValue&)>& add_jump,
                                    const std::function<VectorValue(double)>& slope_at) {
    std::vector<JumpDriftPath::Segment> segments;
    segments.reserve(knots.size());
    VectorValue value = VectorValue::zero(dim);
    for (std::size_t i = 0; i < knots.size(); ++i) {
        double u = knots[i];
        add_jump(u, value);
        VectorValue slope = slope_at(u);
        segments.push_back({u, value, slope});
        double next = (i + 1 < knots.size()) ? knots[i + 1] : horizon;
        value += (next - u) * slope;
    }
    return JumpDriftPath(std::move(segments), horizon);
}

std::vector<double> merged_knots(double horizon, const std::vector<double>& a,
                                 const std::vector<double>& b) {
    std::vector<double> knots{0.0};
    for (double t : a) {
        if (t > 0.0 && t <= horizon) knots.push_back(t);
    }
    for (double t : b) {
        if (t > 0.0 && t <= horizon) knots.push_back(t);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    return knots;
}

void require_left_anchored_on_grid(const StepPath& integrand, const TimeGrid& grid) {
    for (const auto& e : integrand.events()) {
        if (!grid.contains_point(e.time)) {
            throw PredictabilityViolation(
                "integrand change time is not a driver grid point; refine the grid first");
        }
    }
}

void require_predictable_orientation(const StepPath& integrand) {
    if (!integrand.events().empty() && integrand.continuity() == Continuity::right_continuous) {
        throw PredictabilityViolation(
            "integrand is anchored to the right of its intervals; project it first "
            "(left-limit or dyadic shift)");
    }
}

StepPath apply_projection(const StepPath& integrand, const ProjectionChoice& mode) {
    switch (mode.mode) {
        case ProjectionChoice::Mode::left_limit:
            return project_left_limit(integrand);
        case ProjectionChoice::Mode::dyadic:
            return dyadic_shift(integrand, mode.dyadic);
    }
    throw ConfigError("ito_extended: unknown projection mode");
}

std::string dyadic_descriptor(const ProjectionChoice& mode) {
    if (mode.mode == ProjectionChoice::Mode::left_limit) return "left_limit";
    return "dyadic(n=" + std::to_string(mode.dyadic.level) +
           ",s=" + std::to_string(mode.dyadic.anchor) + ")";
}

}  // namespace

IntegralProcess ito_simple(const StepPath& integrand, const SampledPath& driver) {
    if (driver.dim() != 1) {
        throw std::invalid_argument("ito_simple: scalar Wiener driver expected");
    }
    if (integrand.horizon() != driver.grid().t_end()) {
        throw std::domain_error("ito_simple: integrand and driver horizons differ");
    }
    require_left_anchored_on_grid(integrand, driver.grid());

    const TimeGrid& grid = driver.grid();
    SampledPath integral(grid, integrand.dim());
    VectorValue running = VectorValue::zero(integrand.dim());
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        double dw = driver.scalar_at(k + 1) - driver.scalar_at(k);
        running += dw * integrand.value_from_right(grid[k]);
        auto row = integral.at(k + 1);
        for (std::size_t i = 0; i < running.dim(); ++i) row[i] = running[i];
    }
    return {std::move(integral), DriverKind::wiener, "simple"};
}

IntegralProcess ito_simple(const StepPath& integrand, const CompensatedPoisson& driver) {
    if (integrand.horizon() != driver.horizon()) {
        throw std::domain_error("ito_simple: integrand and driver horizons differ");
    }
    require_predictable_orientation(integrand);

    const double rate = driver.rate();
    std::vector<double> atoms = driver.jump_times();
    std::vector<double> knots = merged_knots(driver.horizon(), integrand.event_times(), atoms);

    auto add_jump = [&](double u, VectorValue& value) {
        if (std::binary_search(atoms.begin(), atoms.end(), u)) {
            value += integrand.value(u);  // left-continuous: pre-jump information
        }
    };
    auto slope_at = [&](double u) { return -rate * integrand.value_from_right(u); };
    return {accumulate_jump_drift(driver.horizon(), integrand.dim(), knots, add_jump, slope_at),
            DriverKind::compensated_poisson, "simple"};
}

IntegralProcess ito_extended(const StepPath& integrand, const SampledPath& driver,
                             const ProjectionChoice& mode) {
    IntegralProcess out = ito_simple(apply_projection(integrand, mode), driver);
    out.integrand_descriptor = dyadic_descriptor(mode);
    return out;
}

IntegralProcess ito_extended(const StepPath& integrand, const CompensatedPoisson& driver,
                             const ProjectionChoice& mode) {
    IntegralProcess out = ito_simple(apply_projection(integrand, mode), driver);
    out.integrand_descriptor = dyadic_descriptor(mode);
    return out;
}

IntegralProcess lebesgue_stieltjes(const StepPath& integrand, const CompensatedPoisson& driver) {
    if (integrand.horizon() != driver.horizon()) {
        throw std::domain_error("lebesgue_stieltjes: integrand and driver horizons differ");
    }
    const double rate = driver.rate();
    std::vector<double> atoms = driver.jump_times();
    std::vector<double> knots = merged_knots(driver.horizon(), integrand.event_times(), atoms);

    // Pathwise convention: the integrand's own value at the jump time, which
    // for a cadlag integrand includes the jump.
    auto add_jump = [&](double u, VectorValue& value) {
        if (std::binary_search(atoms.begin(), atoms.end(), u)) {
            value += integrand.value(u);
        }
    };
    auto slope_at = [&](double u) { return -rate * integrand.value_from_right(u); };
    return {accumulate_jump_drift(driver.horizon(), integrand.dim(), knots, add_jump, slope_at),
            DriverKind::compensated_poisson, "pathwise"};
}

IntegralProcess lebesgue_stieltjes(const StepPath&, const SampledPath&) {
    throw UnsupportedDriver(
        "lebesgue_stieltjes: Wiener paths have infinite variation; no pathwise integral exists");
}

HsOperator::HsOperator(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("HsOperator: empty shape");
}

HsOperator HsOperator::identity(std::size_t n) {
    HsOperator op(n, n);
    for (std::size_t i = 0; i < n; ++i) op.at(i, i) = 1.0;
    return op;
}

HsOperator HsOperator::diagonal(std::vector<double> diag) {
    HsOperator op(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) op.at(i, i) = diag[i];
    return op;
}

void HsOperator::apply(std::span<const double> x, std::span<double> out) const {
    if (x.size() != cols_ || out.size() != rows_) {
        throw std::invalid_argument("HsOperator::apply: dimension mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
        out[i] = s;
    }
}

double hs_norm(const HsOperator& op, const QSpec& q) {
    if (op.cols() != q.dim()) {
        throw std::domain_error("hs_norm: column count must match the spectrum length");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < op.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < op.rows(); ++i) col += op.at(i, j) * op.at(i, j);
        s += q.eigenvalues()[j] * col;
    }
    return std::sqrt(s);
}

OperatorStepFunction::OperatorStepFunction(std::vector<double> anchors, std::vector<HsOperator> ops)
    : anchors_(std::move(anchors)), ops_(std::move(ops)) {
    if (anchors_.empty() || anchors_.size() != ops_.size()) {
        throw std::invalid_argument("OperatorStepFunction: need one operator per anchor");
    }
    if (anchors_.front() != 0.0) {
        throw std::invalid_argument("OperatorStepFunction: first anchor must be 0");
    }
    for (std::size_t i = 1; i < anchors_.size(); ++i) {
        if (!(anchors_[i] > anchors_[i - 1])) {
            throw std::invalid_argument("OperatorStepFunction: anchors must be strictly increasing");
        }
    }
    for (const auto& op : ops_) {
        if (op.rows() != ops_.front().rows() || op.cols() != ops_.front().cols()) {
            throw std::invalid_argument("OperatorStepFunction: inconsistent operator shapes");
        }
    }
}

OperatorStepFunction OperatorStepFunction::constant(HsOperator op) {
    std::vector<HsOperator> ops;
    ops.push_back(std::move(op));
    return OperatorStepFunction({0.0}, std::move(ops));
}

const HsOperator& OperatorStepFunction::at_cell_start(double u) const {
    auto it = std::upper_bound(anchors_.begin(), anchors_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - anchors_.begin());
    if (i == 0) throw std::domain_error("OperatorStepFunction: u before first anchor");
    return ops_[i - 1];
}

double OperatorStepFunction::squared_hs_time_integral(const QSpec& q, double horizon) const {
    if (!(anchors_.back() < horizon)) {
        throw std::domain_error("OperatorStepFunction: anchors must lie inside [0, horizon)");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
        double hi = (i + 1 < anchors_.size()) ? anchors_[i + 1] : horizon;
        double n = hs_norm(ops_[i], q);
        total += n * n * (hi - anchors_[i]);
    }
    return total;
}

IntegralProcess qwiener_integral(const OperatorStepFunction& integrand, const SampledPath& driver) {
    if (integrand.cols() != driver.dim()) {
        throw std::domain_error("qwiener_integral: operator columns must match driver dimension");
    }
    const TimeGrid& grid = driver.grid();
    for (double a : integrand.anchors()) {
        if (!grid.contains_point(a)) {
            throw PredictabilityViolation(
                "qwiener_integral: integrand anchor is not a driver grid point");
        }
    }
    SampledPath integral(grid, integrand.rows());
    std::vector<double> dw(driver.dim());
    std::vector<double> contrib(integrand.rows());
    std::vector<double> running(integrand.rows(), 0.0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        auto prev = driver.at(k);
        auto next = driver.at(k + 1);
        for (std::size_t j = 0; j < dw.size(); ++j) dw[j] = next[j] - prev[j];
        integrand.at_cell_start(grid[k]).apply(dw, contrib);
        auto row = integral.at(k + 1);
        for (std::size_t i = 0; i < running.size(); ++i) {
            running[i] += contrib[i];
            row[i] = running[i];
        }
    }
    return {std::move(integral), DriverKind::q_wiener, "simple"};
}

PrmIntegrand::PrmIntegrand(std::vector<double> anchors, std::vector<MarkFn> cells, std::size_t dim)
    : anchors_(std::move(anchors)), cells_(std::move(cells)), dim_(dim) {
    if (anchors_.empty() || anchors_.size() != cells_.size()) {
        throw std::invalid_argument("PrmIntegrand: need one mark function per anchor");
    }
    if (anchors_.front() != 0.0) {
        throw std::invalid_argument("PrmIntegrand: first anchor must be 0");
    }
    for (std::size_t i = 1; i < anchors_.size(); ++i) {
        if (!(anchors_[i] > anchors_[i - 1])) {
            throw std::invalid_argument("PrmIntegrand: anchors must be strictly increasing");
        }
    }
    if (dim_ == 0) throw std::invalid_argument("PrmIntegrand: dim must be positive");
}

PrmIntegrand PrmIntegrand::time_constant(MarkFn fn, std::size_t dim) {
    std::vector<MarkFn> cells;
    cells.push_back(std::move(fn));
    return PrmIntegrand({0.0}, std::move(cells), dim);
}

const PrmIntegrand::MarkFn& PrmIntegrand::cell_for_atom(double atom_time) const {
    auto it = std::lower_bound(anchors_.begin(), anchors_.end(), atom_time);
    std::size_t i = static_cast<std::size_t>(it - anchors_.begin());
    if (i == 0) throw std::domain_error("PrmIntegrand: atom before first anchor");
    return cells_[i - 1];
}

const PrmIntegrand::MarkFn& PrmIntegrand::cell_at_start(double u) const {
    auto it = std::upper_bound(anchors_.begin(), anchors_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - anchors_.begin());
    if (i == 0) throw std::domain_error("PrmIntegrand: u before first anchor");
    return cells_[i - 1];
}

IntegralProcess prm_integral(const PrmIntegrand& integrand, const PrmRealization& prm) {
    const double horizon = prm.horizon();
    const MarkSpace& ms = prm.mark_space();

    // One compensator value per integrand cell, exact for finite mark spaces.
    std::vector<VectorValue> cell_compensator;
    cell_compensator.reserve(integrand.anchors().size());
    for (std::size_t i = 0; i < integrand.anchors().size(); ++i) {
        std::vector<double> acc(integrand.dim(), 0.0);
        std::vector<double> scratch(integrand.dim());
        const auto& fn = integrand.cell_at_start(integrand.anchors()[i]);
        ms.integrate_into(
            [&](double x, std::span<double> out) {
                VectorValue v = fn(x);
                if (v.dim() != out.size()) {
                    throw std::invalid_argument("prm_integral: mark function dimension mismatch");
                }
                for (std::size_t c = 0; c < out.size(); ++c) out[c] = v[c];
            },
            acc, scratch);
        cell_compensator.emplace_back(std::move(acc));
    }
    auto compensator_at = [&](double u) -> const VectorValue& {
        auto it = std::upper_bound(integrand.anchors().begin(), integrand.anchors().end(), u);
        return cell_compensator[static_cast<std::size_t>(it - integrand.anchors().begin()) - 1];
    };

    std::vector<double> atom_times = prm.atom_times();
    std::vector<double> knots = merged_knots(horizon, integrand.anchors(), atom_times);

    std::size_t next_atom = 0;
    auto add_jump = [&](double u, VectorValue& value) {
        while (next_atom < prm.atoms().size() && prm.atoms()[next_atom].time < u) ++next_atom;
        if (next_atom < prm.atoms().size() && prm.atoms()[next_atom].time == u) {
            value += integrand.cell_for_atom(u)(prm.atoms()[next_atom].mark);
            ++next_atom;
        }
    };
    auto slope_at = [&](double u) { return -1.0 * compensator_at(u); };
    return {accumulate_jump_drift(horizon, integrand.dim(), knots, add_jump, slope_at),
            DriverKind::prm, "simple"};
}

double prm_squared_compensator_integral(const PrmIntegrand& integrand, const MarkSpace& ms,
                                        double horizon) {
    if (!(integrand.anchors().back() < horizon)) {
        throw std::domain_error("prm_squared_compensator_integral: anchors must lie inside [0, horizon)");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < integrand.anchors().size(); ++i) {
        double hi = (i + 1 < integrand.anchors().size()) ? integrand.anchors()[i + 1] : horizon;
        const auto& fn = integrand.cell_at_start(integrand.anchors()[i]);
        double cell = ms.integrate([&](double x) { return fn(x).sum_sq(); });
        total += cell * (hi - integrand.anchors()[i]);
    }
    return total;
}

double bracket_integral(const StepPath& integrand, const MartingaleDriver& driver) {
    DoleansMeasure mu =
        DoleansMeasure::constant_density(integrand.horizon(), driver.bracket_density, 2.0);
    return exact_lp_integral(integrand, mu);
}

}  // namespace stochint
