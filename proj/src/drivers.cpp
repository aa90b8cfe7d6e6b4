#include "stochint/drivers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochint {

namespace {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], computed
// once by Newton iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre_32() {
    static const GaussLegendre rule = [] {
        constexpr int n = 32;
        GaussLegendre r;
        r.nodes.resize(n);
        r.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = std::cos(3.141592653589793238462643 * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            r.nodes[i] = x;
            r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

}  // namespace

QSpec::QSpec(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
    if (eigenvalues_.empty()) throw std::invalid_argument("QSpec: empty spectrum");
    double prev = std::numeric_limits<double>::infinity();
    for (double l : eigenvalues_) {
        if (!(l > 0.0)) throw std::invalid_argument("QSpec: eigenvalues must be positive");
        if (l > prev) throw std::invalid_argument("QSpec: eigenvalues must be nonincreasing");
        prev = l;
    }
}

double QSpec::trace() const {
    double t = 0.0;
    for (double l : eigenvalues_) t += l;
    return t;
}

MartingaleDriver MartingaleDriver::wiener(double variance_rate) {
    if (!(variance_rate > 0.0)) {
        throw std::domain_error("MartingaleDriver: variance rate must be positive");
    }
    return {Kind::wiener, variance_rate};
}

MartingaleDriver MartingaleDriver::compensated_poisson(double intensity) {
    if (!(intensity > 0.0)) {
        throw std::domain_error("MartingaleDriver: intensity must be positive");
    }
    return {Kind::compensated_poisson, intensity};
}

MarkSpace MarkSpace::finite(std::vector<WeightedMark> marks) {
    if (marks.empty()) throw std::invalid_argument("MarkSpace: need at least one mark");
    MarkSpace ms;
    ms.finite_ = true;
    ms.marks_ = std::move(marks);
    double total = 0.0;
    for (const auto& m : ms.marks_) {
        if (!(m.weight > 0.0)) throw std::invalid_argument("MarkSpace: weights must be positive");
        total += m.weight;
        ms.cum_weights_.push_back(total);
    }
    ms.total_mass_ = total;
    return ms;
}

MarkSpace MarkSpace::interval(double lo, double hi, double density) {
    return interval({lo, hi}, {density});
}

MarkSpace MarkSpace::interval(std::vector<double> cuts, std::vector<double> density) {
    if (cuts.size() < 2 || density.size() + 1 != cuts.size()) {
        throw std::invalid_argument("MarkSpace: need n+1 cuts for n density cells");
    }
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (!(cuts[i] > cuts[i - 1])) {
            throw std::invalid_argument("MarkSpace: cuts must be strictly increasing");
        }
    }
    MarkSpace ms;
    ms.finite_ = false;
    ms.cuts_ = std::move(cuts);
    ms.density_ = std::move(density);
    double total = 0.0;
    for (std::size_t i = 0; i < ms.density_.size(); ++i) {
        if (!(ms.density_[i] >= 0.0)) {
            throw std::invalid_argument("MarkSpace: density must be nonnegative");
        }
        total += ms.density_[i] * (ms.cuts_[i + 1] - ms.cuts_[i]);
        ms.cum_weights_.push_back(total);
    }
    if (!(total > 0.0)) throw std::invalid_argument("MarkSpace: total mass must be positive");
    ms.total_mass_ = total;
    return ms;
}

double MarkSpace::sample(Rng& rng) const {
    double u = rng.next_double() * total_mass_;
    auto it = std::upper_bound(cum_weights_.begin(), cum_weights_.end(), u);
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cum_weights_.begin()),
                                          cum_weights_.size() - 1);
    if (finite_) return marks_[i].value;
    return cuts_[i] + rng.next_double() * (cuts_[i + 1] - cuts_[i]);
}

double MarkSpace::integrate(const std::function<double(double)>& fn) const {
    if (finite_) {
        double s = 0.0;
        for (const auto& m : marks_) s += m.weight * fn(m.value);
        return s;
    }
    const auto& gl = gauss_legendre_32();
    double s = 0.0;
    for (std::size_t c = 0; c < density_.size(); ++c) {
        double mid = 0.5 * (cuts_[c] + cuts_[c + 1]);
        double half = 0.5 * (cuts_[c + 1] - cuts_[c]);
        double cell = 0.0;
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            cell += gl.weights[k] * fn(mid + half * gl.nodes[k]);
        }
        s += density_[c] * half * cell;
    }
    return s;
}

void MarkSpace::integrate_into(const std::function<void(double, std::span<double>)>& fn,
                               std::span<double> out, std::span<double> scratch) const {
    std::fill(out.begin(), out.end(), 0.0);
    auto accumulate = [&](double x, double w) {
        fn(x, scratch);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * scratch[i];
    };
    if (finite_) {
        for (const auto& m : marks_) accumulate(m.value, m.weight);
        return;
    }
    const auto& gl = gauss_legendre_32();
    for (std::size_t c = 0; c < density_.size(); ++c) {
        double mid = 0.5 * (cuts_[c] + cuts_[c + 1]);
        double half = 0.5 * (cuts_[c + 1] - cuts_[c]);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            accumulate(mid + half * gl.nodes[k], density_[c] * half * gl.weights[k]);
        }
    }
}

PrmRealization::PrmRealization(std::vector<PrmAtom> atoms, MarkSpace mark_space, double horizon)
    : atoms_(std::move(atoms)), mark_space_(std::move(mark_space)), horizon_(horizon) {
    if (!(horizon_ > 0.0)) throw std::domain_error("PrmRealization: horizon must be positive");
    double prev = 0.0;
    for (const auto& a : atoms_) {
        if (!(a.time > prev)) {
            throw std::invalid_argument("PrmRealization: atom times must be strictly increasing and > 0");
        }
        if (a.time > horizon_) throw std::invalid_argument("PrmRealization: atom beyond horizon");
        prev = a.time;
    }
}

std::size_t PrmRealization::count_up_to(double t) const {
    auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t,
                               [](double x, const PrmAtom& a) { return x < a.time; });
    return static_cast<std::size_t>(it - atoms_.begin());
}

std::vector<double> PrmRealization::atom_times() const {
    std::vector<double> ts;
    ts.reserve(atoms_.size());
    for (const auto& a : atoms_) ts.push_back(a.time);
    return ts;
}

CompensatedPoisson::CompensatedPoisson(StepPath counting, double rate)
    : counting_(std::move(counting)), rate_(rate) {
    if (!(rate_ > 0.0)) throw std::domain_error("CompensatedPoisson: rate must be positive");
    if (counting_.dim() != 1 || !counting_.initial().is_zero()) {
        throw std::invalid_argument("CompensatedPoisson: need a scalar counting path starting at 0");
    }
    double prev = 0.0;
    for (const auto& e : counting_.events()) {
        if (e.value.scalar() != prev + 1.0) {
            throw std::invalid_argument("CompensatedPoisson: counting path must have unit upward jumps");
        }
        prev = e.value.scalar();
    }
}

SampledPath simulate_wiener(const TimeGrid& grid, double variance_rate, Seed seed) {
    if (!(variance_rate > 0.0)) {
        throw std::domain_error("simulate_wiener: variance rate must be positive");
    }
    Rng rng(seed);
    SampledPath path(grid, 1);
    double w = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        w += std::sqrt(variance_rate * grid.dt(k)) * rng.next_normal();
        path.at(k + 1)[0] = w;
    }
    return path;
}

SampledPath simulate_q_wiener(const TimeGrid& grid, const QSpec& q, Seed seed) {
    Rng rng(seed);
    SampledPath path(grid, q.dim());
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        auto prev = path.at(k);
        auto next = path.at(k + 1);
        double dt = grid.dt(k);
        for (std::size_t j = 0; j < q.dim(); ++j) {
            next[j] = prev[j] + std::sqrt(q.eigenvalues()[j] * dt) * rng.next_normal();
        }
    }
    return path;
}

StepPath simulate_poisson(double rate, double horizon, Seed seed) {
    if (!(rate > 0.0)) throw std::domain_error("simulate_poisson: rate must be positive");
    if (!(horizon > 0.0)) throw std::domain_error("simulate_poisson: horizon must be positive");
    Rng rng(seed);
    std::vector<StepPath::Event> events;
    double t = 0.0;
    double count = 0.0;
    for (;;) {
        t += rng.next_exponential(rate);
        if (t > horizon) break;
        count += 1.0;
        events.push_back({t, VectorValue::scalar(count)});
    }
    return StepPath(VectorValue::scalar(0.0), std::move(events), horizon);
}

CompensatedPoisson compensated_path(StepPath counting, double rate) {
    return CompensatedPoisson(std::move(counting), rate);
}

std::vector<PrmAtom> simulate_prm_atoms(const MarkSpace& ms, double horizon, Rng& rng) {
    if (!(horizon > 0.0)) throw std::domain_error("simulate_prm: horizon must be positive");
    std::uint64_t count = rng.next_poisson(ms.total_mass() * horizon);
    std::vector<double> times(count);
    for (auto& t : times) t = rng.next_open_double() * horizon;
    std::sort(times.begin(), times.end());
    // Ties have probability zero but would break the strict ordering; re-draw
    // duplicates until the list is strictly increasing.
    for (;;) {
        bool tied = false;
        for (std::size_t i = 1; i < times.size(); ++i) {
            if (times[i] == times[i - 1]) {
                times[i] = rng.next_open_double() * horizon;
                tied = true;
            }
        }
        if (!tied) break;
        std::sort(times.begin(), times.end());
    }
    std::vector<PrmAtom> atoms(count);
    for (std::size_t i = 0; i < count; ++i) {
        atoms[i] = {times[i], ms.sample(rng)};
    }
    return atoms;
}

PrmRealization simulate_prm(const MarkSpace& ms, double horizon, Seed seed) {
    Rng rng(seed);
    return PrmRealization(simulate_prm_atoms(ms, horizon, rng), ms, horizon);
}

}  // namespace stochint
