#include "stochint/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stochint/concurrency.hpp"
#include "stochint/csv.hpp"
#include "stochint/drivers.hpp"
#include "stochint/errors.hpp"
#include "stochint/integrate.hpp"
#include "stochint/spde.hpp"
#include "stochint/verify.hpp"
#include "stochint/version.hpp"

namespace stochint {

namespace {

using nlohmann::json;

// Exact-identity gate for the pathwise-vs-extended integral residuals;
// floating-point noise only, no statistical term.
constexpr double kIdentityTol = 1e-12;

const std::set<std::string>& known_experiments() {
    static const std::set<std::string> names{"poisson-example", "isometry", "project",
                                             "qwiener",         "prm",      "spde",
                                             "report"};
    return names;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["seed"] = c.seed;
    j["paths"] = c.paths;
    j["horizon"] = c.horizon;
    j["grid"] = c.grid_cells;
    j["levels"] = std::to_string(c.levels_lo) + ".." + std::to_string(c.levels_hi);
    j["p"] = c.p;
    j["mode"] = c.mode;
    j["s"] = c.s;
    j["out"] = c.out_dir;
    j["driver"] = c.driver;
    j["modes"] = c.modes;
    j["rate"] = c.rate;
    j["noise"] = c.noise;
    j["path_class"] = c.path_class;
    j["z"] = c.z;
    j["threads"] = c.threads;
    return j;
}

json report_to_json(const McReport& r) {
    json j;
    j["estimator"] = r.estimator;
    j["estimate"] = r.estimate;
    j["std_error"] = r.std_error;
    j["target"] = r.target;
    j["z_score"] = r.z_score;
    j["z_threshold"] = r.z_threshold;
    j["n_paths"] = r.n_paths;
    j["seed"] = r.seed;
    j["pass"] = r.pass;
    return j;
}

std::string report_line(const McReport& r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.estimator << ": estimate=" << r.estimate
       << " target=" << r.target << " se=" << r.std_error << " z=" << r.z_score;
    return os.str();
}

void write_metadata(const std::filesystem::path& file, const json& j,
                    ExperimentResult& result) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + file.string());
    out << j.dump(2) << '\n';
    result.files_written.push_back(file.string());
}

std::filesystem::path out_file(const ExperimentConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / name;
}

void append_reports(ExperimentResult& result, json& meta_reports,
                    const std::vector<McReport>& reports, bool& pass) {
    for (const auto& r : reports) {
        result.lines.push_back(report_line(r));
        meta_reports.push_back(report_to_json(r));
        pass = pass && r.pass;
    }
}

ProjectionChoice projection_from_config(const ExperimentConfig& cfg) {
    if (cfg.mode == "left_limit") return ProjectionChoice::left_limit();
    if (cfg.mode == "dyadic") return ProjectionChoice::dyadic_shifted(cfg.levels_hi, cfg.s);
    throw ConfigError("unknown projection mode: " + cfg.mode);
}

// ---------------------------------------------------------------------------
// poisson-example: per-path pathwise-vs-extended identity plus the two mean
// tests of the martingale contrast.
// ---------------------------------------------------------------------------
ExperimentResult run_poisson_example(const ExperimentConfig& cfg) {
    const double T = cfg.horizon;
    const std::array<double, 3> times{0.25 * T, 0.5 * T, T};
    const std::size_t n = cfg.paths;
    const ProjectionChoice mode = projection_from_config(cfg);
    const bool mode_is_left = cfg.mode == "left_limit";

    std::vector<double> n_terminal(n), ito_terminal(n), ls_terminal(n), residual(n);
    std::array<std::vector<double>, 3> ito_at;
    for (auto& v : ito_at) v.resize(n);

    for_each_index(n, cfg.threads, [&](std::size_t i) {
        StepPath counting = simulate_poisson(cfg.rate, T, Seed{cfg.seed, i});
        CompensatedPoisson m = compensated_path(counting, cfg.rate);
        IntegralProcess ito = ito_extended(counting, m, mode);
        IntegralProcess ls = lebesgue_stieltjes(counting, m);
        IntegralProcess ito_ll =
            mode_is_left ? ito : ito_extended(counting, m, ProjectionChoice::left_limit());

        double worst = 0.0;
        for (double t : times) {
            double r = ls.scalar_value(t) - counting.scalar_value(t) - ito_ll.scalar_value(t);
            worst = std::max(worst, std::fabs(r));
        }
        residual[i] = worst;
        n_terminal[i] = counting.scalar_value(T);
        ls_terminal[i] = ls.scalar_value(T);
        ito_terminal[i] = ito.scalar_value(T);
        for (std::size_t k = 0; k < times.size(); ++k) ito_at[k][i] = ito.scalar_value(times[k]);
    });

    ExperimentResult result;
    result.pass = true;

    double max_residual = 0.0;
    for (double r : residual) max_residual = std::max(max_residual, r);
    bool identity_ok = max_residual <= kIdentityTol;
    result.pass = result.pass && identity_ok;
    {
        std::ostringstream os;
        os << (identity_ok ? "[PASS] " : "[FAIL] ")
           << "pathwise identity: max |LS - N - ito| = " << max_residual << " (tol "
           << kIdentityTol << ")";
        result.lines.push_back(os.str());
    }

    json meta_reports = json::array();
    std::vector<std::vector<double>> samples{ito_at[0], ito_at[1], ito_at[2]};
    std::vector<double> targets{0.0, 0.0, 0.0};
    append_reports(result, meta_reports,
                   martingale_mean_test("ito_extended_mean", times, samples, targets, cfg.z,
                                        cfg.seed),
                   result.pass);
    append_reports(result, meta_reports,
                   {mc_report("lebesgue_stieltjes_mean@t=" + std::to_string(T), ls_terminal,
                              cfg.rate * T, cfg.z, cfg.seed)},
                   result.pass);

    auto csv_path = out_file(cfg, "poisson-example.csv");
    {
        CsvWriter csv(csv_path, {"path_id", "N_1", "ito_ext_1", "ls_1", "identity_residual"});
        for (std::size_t i = 0; i < n; ++i) {
            csv.row(i, n_terminal[i], ito_terminal[i], ls_terminal[i], residual[i]);
        }
    }
    result.files_written.push_back(csv_path.string());

    json meta;
    meta["experiment"] = cfg.experiment;
    meta["code_version"] = kVersion;
    meta["config"] = config_to_json(cfg);
    meta["results"]["reports"] = meta_reports;
    meta["results"]["max_identity_residual"] = max_residual;
    meta["results"]["identity_tolerance"] = kIdentityTol;
    meta["pass"] = result.pass;
    write_metadata(out_file(cfg, "poisson-example.meta.json"), meta, result);
    return result;
}

// ---------------------------------------------------------------------------
// isometry: E[||I_T||^2] against the bracket/Hilbert-Schmidt/beta side.
// ---------------------------------------------------------------------------
ExperimentResult run_isometry(const ExperimentConfig& cfg) {
    const double T = cfg.horizon;
    const std::size_t n = cfg.paths;
    ExperimentResult result;
    result.pass = true;
    json meta_reports = json::array();
    std::vector<std::array<std::string, 2>> csv_tail;  // (integrand, driver) per report
    std::vector<McReport> reports;

    if (cfg.driver == "wiener") {
        std::vector<std::pair<std::string, StepPath>> battery;
        battery.emplace_back("const_2", StepPath::constant(VectorValue::scalar(2.0), T));
        battery.emplace_back(
            "steps_3",
            StepPath::scalar(1.0, {{0.3 * T, -1.0}, {0.7 * T, 2.0}}, T,
                             Continuity::left_continuous));
        TimeGrid grid = TimeGrid::uniform(T, cfg.grid_cells)
                            .refined(std::vector<double>{0.3 * T, 0.7 * T});
        for (const auto& [name, phi] : battery) {
            double exact = bracket_integral(phi, MartingaleDriver::wiener(cfg.rate));
            std::vector<double> samples(n);
            for_each_index(n, cfg.threads, [&](std::size_t i) {
                SampledPath w = simulate_wiener(grid, cfg.rate, Seed{cfg.seed, i});
                double v = ito_simple(phi, w).terminal().scalar();
                samples[i] = v * v;
            });
            reports.push_back(mc_report("isometry_wiener_" + name, samples, exact, cfg.z, cfg.seed));
            csv_tail.push_back({name, "wiener"});
        }
    } else if (cfg.driver == "qwiener") {
        QSpec q({0.5, 0.25, 0.125});
        TimeGrid grid = TimeGrid::uniform(T, cfg.grid_cells);
        OperatorStepFunction phi = OperatorStepFunction::constant(HsOperator::identity(q.dim()));
        double exact = phi.squared_hs_time_integral(q, T);
        std::vector<double> samples(n);
        for_each_index(n, cfg.threads, [&](std::size_t i) {
            SampledPath w = simulate_q_wiener(grid, q, Seed{cfg.seed, i});
            samples[i] = qwiener_integral(phi, w).terminal().sum_sq();
        });
        reports.push_back(mc_report("isometry_qwiener_identity", samples, exact, cfg.z, cfg.seed));
        csv_tail.push_back({"identity", "qwiener"});
    } else if (cfg.driver == "prm") {
        MarkSpace ms = MarkSpace::finite({{0.0, 1.0}, {1.0, 2.0}});
        PrmIntegrand phi = PrmIntegrand::time_constant(
            [](double x) { return VectorValue::scalar(x == 1.0 ? 1.0 : 0.0); }, 1);
        double exact = prm_squared_compensator_integral(phi, ms, T);
        std::vector<double> samples(n);
        for_each_index(n, cfg.threads, [&](std::size_t i) {
            PrmRealization prm = simulate_prm(ms, T, Seed{cfg.seed, i});
            double v = prm_integral(phi, prm).terminal().scalar();
            samples[i] = v * v;
        });
        reports.push_back(mc_report("isometry_prm_indicator", samples, exact, cfg.z, cfg.seed));
        csv_tail.push_back({"mark_indicator", "prm"});
    } else if (cfg.driver == "cpoisson") {
        std::vector<double> lhs(n), rhs(n);
        for_each_index(n, cfg.threads, [&](std::size_t i) {
            StepPath counting = simulate_poisson(cfg.rate, T, Seed{cfg.seed, i});
            CompensatedPoisson m = compensated_path(counting, cfg.rate);
            double v = ito_extended(counting, m, ProjectionChoice::left_limit())
                           .terminal()
                           .scalar();
            lhs[i] = v * v;
            rhs[i] = bracket_integral(project_left_limit(counting),
                                      MartingaleDriver::compensated_poisson(cfg.rate));
        });
        reports.push_back(
            mc_two_sample_report("isometry_cpoisson_left_limit", lhs, rhs, cfg.z, cfg.seed));
        csv_tail.push_back({"counting_left_limit", "cpoisson"});
    } else {
        throw ConfigError("isometry: unknown driver " + cfg.driver);
    }

    append_reports(result, meta_reports, reports, result.pass);

    auto csv_path = out_file(cfg, "isometry.csv");
    {
        CsvWriter csv(csv_path, {"driver", "integrand", "n_paths", "estimate", "target",
                                 "std_error", "z", "pass"});
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            csv.row(csv_tail[i][1], csv_tail[i][0], r.n_paths, r.estimate, r.target, r.std_error,
                    r.z_score, static_cast<int>(r.pass));
        }
    }
    result.files_written.push_back(csv_path.string());

    json meta;
    meta["experiment"] = cfg.experiment;
    meta["code_version"] = kVersion;
    meta["config"] = config_to_json(cfg);
    meta["results"]["reports"] = meta_reports;
    meta["pass"] = result.pass;
    write_metadata(out_file(cfg, "isometry.meta.json"), meta, result);
    return result;
}

// ---------------------------------------------------------------------------
// project: dyadic convergence table plus the exact left-limit projection
// checks.
// ---------------------------------------------------------------------------
ExperimentResult run_project(const ExperimentConfig& cfg) {
    const double T = cfg.horizon;
    DoleansMeasure mu = DoleansMeasure::lebesgue(T, cfg.p);
    std::vector<int> levels;
    for (int l = cfg.levels_lo; l <= cfg.levels_hi; ++l) levels.push_back(l);
    std::vector<double> anchors{cfg.s};

    std::function<StepPath(std::uint64_t)> make_path;
    if (cfg.path_class == "poisson") {
        make_path = [&](std::uint64_t i) { return simulate_poisson(cfg.rate, T, Seed{cfg.seed, i}); };
    } else if (cfg.path_class == "wiener") {
        TimeGrid grid = TimeGrid::uniform(T, cfg.grid_cells);
        make_path = [&cfg, grid](std::uint64_t i) {
            return simulate_wiener(grid, cfg.rate, Seed{cfg.seed, i}).as_step_path();
        };
    } else {
        throw ConfigError("project: unknown path class " + cfg.path_class);
    }

    ConvergenceTable table = dyadic_convergence_study(make_path, mu, levels, anchors, cfg.paths);

    // Monotone decrease with at most one violation (Monte Carlo noise guard).
    std::size_t violations = 0;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        if (table.rows[i].anchor == table.rows[i - 1].anchor &&
            table.rows[i].lp_error > table.rows[i - 1].lp_error) {
            ++violations;
        }
    }
    bool monotone_ok = violations <= 1;

    // Exact projection identity battery: 100 Poisson paths, three densities,
    // p in {1, 2}.
    std::vector<StepPath> battery;
    for (std::uint64_t i = 0; i < 100; ++i) {
        battery.push_back(simulate_poisson(cfg.rate, T, Seed{cfg.seed ^ 0x9E3779B9ULL, i}));
    }
    std::vector<DoleansMeasure> measures;
    for (double p : {1.0, 2.0}) {
        measures.push_back(DoleansMeasure::lebesgue(T, p));
        measures.push_back(DoleansMeasure::constant_density(T, 2.0, p));
        measures.push_back(DoleansMeasure::piecewise(
            StepPath::scalar(1.0, {{T / 3.0, 0.5}, {0.6 * T, 2.0}}, T), p));
    }
    std::vector<Prop22Row> prop22 = proposition_22_check(battery, measures);
    bool prop22_ok = std::all_of(prop22.begin(), prop22.end(),
                                 [](const Prop22Row& r) { return r.exactly_zero; });

    ExperimentResult result;
    result.pass = monotone_ok && prop22_ok;
    {
        std::ostringstream os;
        os << (monotone_ok ? "[PASS] " : "[FAIL] ") << "convergence table: fitted log2 rate "
           << table.fitted_rate << ", non-monotone steps " << violations;
        result.lines.push_back(os.str());
    }
    {
        std::ostringstream os;
        os << (prop22_ok ? "[PASS] " : "[FAIL] ")
           << "left-limit projection: " << prop22.size() << " path/measure combinations, all "
           << (prop22_ok ? "exactly zero" : "NOT exactly zero");
        result.lines.push_back(os.str());
    }

    auto csv_path = out_file(cfg, "project.csv");
    {
        CsvWriter csv(csv_path, {"n", "s", "lp_error"});
        for (const auto& row : table.rows) csv.row(row.level, row.anchor, row.lp_error);
    }
    result.files_written.push_back(csv_path.string());

    json meta;
    meta["experiment"] = cfg.experiment;
    meta["code_version"] = kVersion;
    meta["config"] = config_to_json(cfg);
    meta["results"]["fitted_rate"] = table.fitted_rate;
    meta["results"]["non_monotone_steps"] = violations;
    meta["results"]["projection_combinations"] = prop22.size();
    meta["results"]["projection_all_exactly_zero"] = prop22_ok;
    meta["pass"] = result.pass;
    write_metadata(out_file(cfg, "project.meta.json"), meta, result);
    return result;
}

// ---------------------------------------------------------------------------
// qwiener: trace and isometry contracts of the spectral construction.
// ---------------------------------------------------------------------------
ExperimentResult run_qwiener(const ExperimentConfig& cfg) {
    const double T = cfg.horizon;
    const std::size_t n = cfg.paths;
    QSpec q({0.5, 0.25, 0.125});
    TimeGrid grid = TimeGrid::uniform(T, cfg.grid_cells);

    std::vector<double> norm_sq(n);
    std::array<std::vector<double>, 3> coord;
    for (auto& v : coord) v.resize(n);
    std::vector<double> integral_sq(n);
    OperatorStepFunction identity = OperatorStepFunction::constant(HsOperator::identity(q.dim()));

    for_each_index(n, cfg.threads, [&](std::size_t i) {
        SampledPath w = simulate_q_wiener(grid, q, Seed{cfg.seed, i});
        auto last = w.at(grid.size() - 1);
        double s = 0.0;
        for (std::size_t j = 0; j < q.dim(); ++j) {
            coord[j][i] = last[j];
            s += last[j] * last[j];
        }
        norm_sq[i] = s;
        integral_sq[i] = qwiener_integral(identity, w).terminal().sum_sq();
    });

    std::vector<McReport> reports;
    reports.push_back(mc_report("qwiener_trace_E_norm_sq", norm_sq, q.trace() * T, cfg.z, cfg.seed));
    for (std::size_t j = 0; j < q.dim(); ++j) {
        reports.push_back(mc_report("qwiener_coord_mean_" + std::to_string(j + 1), coord[j], 0.0,
                                    cfg.z, cfg.seed));
    }
    reports.push_back(mc_report("qwiener_isometry_identity", integral_sq,
                                identity.squared_hs_time_integral(q, T), cfg.z, cfg.seed));

    ExperimentResult result;
    result.pass = true;
    json meta_reports = json::array();
    append_reports(result, meta_reports, reports, result.pass);

    auto csv_path = out_file(cfg, "qwiener.csv");
    {
        CsvWriter csv(csv_path, {"check", "estimate", "target", "std_error", "z", "pass"});
        for (const auto& r : reports) {
            csv.row(r.estimator, r.estimate, r.target, r.std_error, r.z_score,
                    static_cast<int>(r.pass));
        }
    }
    result.files_written.push_back(csv_path.string());

    json meta;
    meta["experiment"] = cfg.experiment;
    meta["code_version"] = kVersion;
    meta["config"] = config_to_json(cfg);
    meta["results"]["reports"] = meta_reports;
    meta["pass"] = result.pass;
    write_metadata(out_file(cfg, "qwiener.meta.json"), meta, result);
    return result;
}

// ---------------------------------------------------------------------------
// prm: counting statistics, compensation and the beta-side isometry.
// ---------------------------------------------------------------------------
ExperimentResult run_prm(const ExperimentConfig& cfg) {
    const double T = cfg.horizon;
    const std::size_t n = cfg.paths;
    MarkSpace ms = MarkSpace::finite({{0.0, 1.0}, {1.0, 2.0}});
    PrmIntegrand ones = PrmIntegrand::time_constant(
        [](double) { return VectorValue::scalar(1.0); }, 1);
    PrmIntegrand indicator = PrmIntegrand::time_constant(
        [](double x) { return VectorValue::scalar(x == 1.0 ? 1.0 : 0.0); }, 1);
    auto g = [](double x) { return x * x + 1.0; };
    const double g_compensator = ms.integrate(g) * T;

    std::vector<double> count(n), count_b(n), comp_mean(n), g_comp(n), indicator_sq(n);
    for_each_index(n, cfg.threads, [&](std::size_t i) {
        PrmRealization prm = simulate_prm(ms, T, Seed{cfg.seed, i});
        count[i] = static_cast<double>(prm.atoms().size());
        double b = 0.0, gs = 0.0;
        for (const auto& a : prm.atoms()) {
            if (a.mark == 1.0) b += 1.0;
            gs += g(a.mark);
        }
        count_b[i] = b;
        g_comp[i] = gs - g_compensator;
        comp_mean[i] = prm_integral(ones, prm).terminal().scalar();
        double v = prm_integral(indicator, prm).terminal().scalar();
        indicator_sq[i] = v * v;
    });

    std::vector<McReport> reports;
    reports.push_back(
        mc_report("prm_mean_atom_count", count, ms.total_mass() * T, cfg.z, cfg.seed));
    reports.push_back(mc_report("prm_mean_b_count", count_b, 2.0 * T, cfg.z, cfg.seed));
    reports.push_back(mc_report("prm_compensation_phi1", comp_mean, 0.0, cfg.z, cfg.seed));
    reports.push_back(mc_report("prm_compensation_g", g_comp, 0.0, cfg.z, cfg.seed));
    reports.push_back(mc_report("prm_isometry_indicator", indicator_sq,
                                prm_squared_compensator_integral(indicator, ms, T), cfg.z,
                                cfg.seed));

    ExperimentResult result;
    result.pass = true;
    json meta_reports = json::array();
    append_reports(result, meta_reports, reports, result.pass);

    auto csv_path = out_file(cfg, "prm.csv");
    {
        CsvWriter csv(csv_path, {"check", "estimate", "target", "std_error", "z", "pass"});
        for (const auto& r : reports) {
            csv.row(r.estimator, r.estimate, r.target, r.std_error, r.z_score,
                    static_cast<int>(r.pass));
        }
    }
    result.files_written.push_back(csv_path.string());

    json meta;
    meta["experiment"] = cfg.experiment;
    meta["code_version"] = kVersion;
    meta["config"] = config_to_json(cfg);
    meta["results"]["reports"] = meta_reports;
    meta["pass"] = result.pass;
    write_metadata(out_file(cfg, "prm.meta.json"), meta, result);
    return result;
}

// ---------------------------------------------------------------------------
// spde: stochastic heat equation, mu_j = j^2 pi^2, lambda_j = 1/j^2.
// Additive Gaussian noise: per-mode variance against the exact second moment.
// Pure compensated-jump noise: per-mode mean against the semigroup decay.
// ---------------------------------------------------------------------------
struct SpdeObservation {
    std::size_t base_index;  // index into the base grid
    double time;             // the grid point double, used for exact targets
};

std::vector<SpdeObservation> spde_observations(const TimeGrid& base) {
    std::size_t k1 = std::max<std::size_t>(1, base.cells() / 10);
    return {{k1, base[k1]}, {base.cells(), base.t_end()}};
}

ExperimentResult run_spde(const ExperimentConfig& cfg) {
    const double T = cfg.horizon;
    const std::size_t n = cfg.paths;
    const std::size_t m = cfg.modes;
    constexpr double kPi = 3.14159265358979323846;

    std::vector<double> generator_eigs(m), lambda(m);
    for (std::size_t j = 0; j < m; ++j) {
        double jj = static_cast<double>(j + 1);
        generator_eigs[j] = jj * jj * kPi * kPi;
        lambda[j] = 1.0 / (jj * jj);
    }
    TimeGrid base = TimeGrid::uniform(T, cfg.grid_cells);
    std::vector<SpdeObservation> obs = spde_observations(base);

    ExperimentResult result;
    result.pass = true;
    json meta;
    meta["experiment"] = cfg.experiment;
    meta["code_version"] = kVersion;
    meta["config"] = config_to_json(cfg);
    json meta_reports = json::array();

    const bool run_gauss = cfg.noise == "gauss" || cfg.noise == "both";
    const bool run_jump = cfg.noise == "jump" || cfg.noise == "both";
    if (!run_gauss && !run_jump) throw ConfigError("spde: unknown noise kind " + cfg.noise);

    if (run_gauss) {
        SpdeSpec spec;
        spec.generator_eigs = generator_eigs;
        spec.modes = m;
        spec.h0 = VectorValue::zero(m);
        spec.grid = base;
        spec.qspec = QSpec(lambda);
        spec.sigma = [](double, std::span<const double>, std::span<const double> dw,
                        std::span<double> out) {
            for (std::size_t j = 0; j < out.size(); ++j) out[j] = dw[j];
        };
        spec.validate();

        // samples[(obs, mode)][path]
        std::vector<std::vector<double>> samples(obs.size() * m, std::vector<double>(n));
        for_each_index(n, cfg.threads, [&](std::size_t i) {
            SolveReport report = mild_step_solve(spec, Seed{cfg.seed, i});
            for (std::size_t o = 0; o < obs.size(); ++o) {
                auto row = report.trajectory.at(obs[o].base_index);
                for (std::size_t j = 0; j < m; ++j) samples[o * m + j][i] = row[j];
            }
        });

        auto csv_path = out_file(cfg, "spde.csv");
        CsvWriter csv(csv_path, {"mode", "t", "mc_var", "exact_var", "z"});
        json var_rows = json::array();
        for (std::size_t o = 0; o < obs.size(); ++o) {
            for (std::size_t j = 0; j < m; ++j) {
                const auto& xs = samples[o * m + j];
                double mean = 0.0;
                for (double x : xs) mean += x;
                mean /= static_cast<double>(n);
                double ss = 0.0;
                for (double x : xs) ss += (x - mean) * (x - mean);
                double var = ss / static_cast<double>(n - 1);
                // Gaussian samples: se(S^2) = S^2 sqrt(2/(n-1)).
                double se = var * std::sqrt(2.0 / static_cast<double>(n - 1));
                double exact = ou_mode_variance(generator_eigs[j], 1.0, lambda[j], obs[o].time);
                double zscore = (var - exact) / se;
                bool ok = std::fabs(zscore) <= cfg.z;
                result.pass = result.pass && ok;
                csv.row(j + 1, obs[o].time, var, exact, zscore);
                var_rows.push_back({{"mode", j + 1},
                                    {"t", obs[o].time},
                                    {"mc_var", var},
                                    {"exact_var", exact},
                                    {"z", zscore},
                                    {"pass", ok}});
                std::ostringstream os;
                os << (ok ? "[PASS] " : "[FAIL] ") << "spde_var mode " << (j + 1) << " t="
                   << obs[o].time << ": mc=" << var << " exact=" << exact << " z=" << zscore;
                result.lines.push_back(os.str());
            }
        }
        meta["results"]["variance_rows"] = var_rows;
        result.files_written.push_back(csv_path.string());
    }

    if (run_jump) {
        SpdeSpec spec;
        spec.generator_eigs = generator_eigs;
        spec.modes = m;
        spec.h0 = VectorValue(std::vector<double>(m, 1.0));
        spec.grid = base;
        spec.mark_space = MarkSpace::finite({{0.0, 1.5}, {1.0, 1.5}});
        spec.gamma = [](double, double mark, std::span<const double>, std::span<double> out) {
            for (std::size_t j = 0; j < out.size(); ++j) {
                out[j] = mark / static_cast<double>(j + 1);
            }
        };
        spec.validate();

        std::vector<std::vector<double>> samples(obs.size() * m, std::vector<double>(n));
        for_each_index(n, cfg.threads, [&](std::size_t i) {
            SolveReport report = mild_step_solve(spec, Seed{cfg.seed ^ 0x5DEECE66DULL, i});
            const TimeGrid& g = report.trajectory.grid();
            for (std::size_t o = 0; o < obs.size(); ++o) {
                std::size_t k = g.cell_index(obs[o].time);
                auto row = report.trajectory.at(k);
                for (std::size_t j = 0; j < m; ++j) samples[o * m + j][i] = row[j];
            }
        });

        auto csv_path = out_file(cfg, "spde_jump.csv");
        CsvWriter csv(csv_path, {"mode", "t", "mc_mean", "exact_mean", "std_error", "z"});
        for (std::size_t o = 0; o < obs.size(); ++o) {
            for (std::size_t j = 0; j < m; ++j) {
                double exact = std::exp(-generator_eigs[j] * obs[o].time);
                McReport r = mc_report("spde_jump_mean mode " + std::to_string(j + 1) +
                                           " t=" + std::to_string(obs[o].time),
                                       samples[o * m + j], exact, cfg.z, cfg.seed);
                result.pass = result.pass && r.pass;
                csv.row(j + 1, obs[o].time, r.estimate, exact, r.std_error, r.z_score);
                result.lines.push_back(report_line(r));
                meta_reports.push_back(report_to_json(r));
            }
        }
        result.files_written.push_back(csv_path.string());
    }

    meta["results"]["reports"] = meta_reports;
    meta["pass"] = result.pass;
    write_metadata(out_file(cfg, "spde.meta.json"), meta, result);
    return result;
}

// ---------------------------------------------------------------------------
// report: aggregate the metadata sidecars under the output directory.
// ---------------------------------------------------------------------------
ExperimentResult run_report(const ExperimentConfig& cfg) {
    std::vector<std::filesystem::path> sidecars;
    if (std::filesystem::exists(cfg.out_dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(cfg.out_dir)) {
            const auto name = entry.path().filename().string();
            if (name.size() > 10 && name.substr(name.size() - 10) == ".meta.json" &&
                name != "report.meta.json") {
                sidecars.push_back(entry.path());
            }
        }
    }
    std::sort(sidecars.begin(), sidecars.end());

    ExperimentResult result;
    result.pass = true;
    auto csv_path = out_file(cfg, "report.csv");
    json aggregated = json::array();
    {
        CsvWriter csv(csv_path, {"file", "experiment", "pass"});
        for (const auto& file : sidecars) {
            std::ifstream in(file);
            json j = json::parse(in);
            std::string experiment = j.value("experiment", std::string("?"));
            bool pass = j.value("pass", false);
            csv.row(file.filename().string(), experiment, static_cast<int>(pass));
            result.lines.push_back(std::string(pass ? "[PASS] " : "[FAIL] ") + experiment + " (" +
                                   file.filename().string() + ")");
            result.pass = result.pass && pass;
            aggregated.push_back({{"file", file.filename().string()},
                                  {"experiment", experiment},
                                  {"pass", pass}});
        }
    }
    result.files_written.push_back(csv_path.string());
    if (sidecars.empty()) {
        result.lines.push_back("[PASS] report: no experiment metadata found under " + cfg.out_dir);
    }

    json meta;
    meta["experiment"] = cfg.experiment;
    meta["code_version"] = kVersion;
    meta["config"] = config_to_json(cfg);
    meta["results"]["aggregated"] = aggregated;
    meta["pass"] = result.pass;
    write_metadata(out_file(cfg, "report.meta.json"), meta, result);
    return result;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!known_experiments().count(experiment)) {
        throw ConfigError("unknown experiment: '" + experiment + "'");
    }
    if (paths < 2) throw ConfigError("paths must be at least 2");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    if (grid_cells < 1) throw ConfigError("grid must have at least 1 cell");
    if (levels_lo < 0 || levels_hi < levels_lo) throw ConfigError("bad level range");
    if (!(p >= 1.0)) throw ConfigError("p must be >= 1");
    if (mode != "left_limit" && mode != "dyadic") throw ConfigError("mode must be left_limit or dyadic");
    if (s < 0.0 || s > horizon) throw ConfigError("anchor s must lie in [0, horizon]");
    if (modes < 1) throw ConfigError("modes must be positive");
    if (!(rate > 0.0)) throw ConfigError("rate must be positive");
    if (noise != "gauss" && noise != "jump" && noise != "both") {
        throw ConfigError("noise must be gauss, jump or both");
    }
    if (path_class != "poisson" && path_class != "wiener") {
        throw ConfigError("path_class must be poisson or wiener");
    }
    if (driver != "wiener" && driver != "qwiener" && driver != "prm" && driver != "cpoisson") {
        throw ConfigError("driver must be wiener, qwiener, prm or cpoisson");
    }
    if (!(z > 0.0)) throw ConfigError("z must be positive");
    if (threads < 1) throw ConfigError("threads must be positive");
}

void parse_levels(const std::string& text, ExperimentConfig& cfg) {
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            cfg.levels_lo = cfg.levels_hi = std::stoi(text);
        } else {
            cfg.levels_lo = std::stoi(text.substr(0, pos));
            cfg.levels_hi = std::stoi(text.substr(pos + 2));
        }
    } catch (const std::exception&) {
        throw ConfigError("cannot parse level range '" + text + "' (expected a..b)");
    }
}

ExperimentConfig config_load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config (byte " + std::to_string(e.byte) + "): " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    ExperimentConfig cfg;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "experiment") cfg.experiment = value.get<std::string>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "paths") cfg.paths = value.get<std::size_t>();
            else if (key == "horizon") cfg.horizon = value.get<double>();
            else if (key == "grid") cfg.grid_cells = value.get<std::size_t>();
            else if (key == "levels") parse_levels(value.get<std::string>(), cfg);
            else if (key == "p") cfg.p = value.get<double>();
            else if (key == "mode") cfg.mode = value.get<std::string>();
            else if (key == "s") cfg.s = value.get<double>();
            else if (key == "out") cfg.out_dir = value.get<std::string>();
            else if (key == "driver") cfg.driver = value.get<std::string>();
            else if (key == "modes") cfg.modes = value.get<std::size_t>();
            else if (key == "rate") cfg.rate = value.get<double>();
            else if (key == "noise") cfg.noise = value.get<std::string>();
            else if (key == "path_class") cfg.path_class = value.get<std::string>();
            else if (key == "z") cfg.z = value.get<double>();
            else if (key == "threads") cfg.threads = value.get<std::size_t>();
            else throw ConfigError("unknown config key: '" + key + "'");
        }
    } catch (const json::type_error& e) {
        throw ConfigError(std::string("bad config value type: ") + e.what());
    }
    return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment == "poisson-example") return run_poisson_example(cfg);
    if (cfg.experiment == "isometry") return run_isometry(cfg);
    if (cfg.experiment == "project") return run_project(cfg);
    if (cfg.experiment == "qwiener") return run_qwiener(cfg);
    if (cfg.experiment == "prm") return run_prm(cfg);
    if (cfg.experiment == "spde") return run_spde(cfg);
    if (cfg.experiment == "report") return run_report(cfg);
    throw ConfigError("unknown experiment: " + cfg.experiment);
}

}  // namespace stochint
