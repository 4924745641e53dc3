#pragma once

// Command implementations behind tools/fraclab. Each returns a process exit code.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "diagnostics.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "kernels.hpp"
#include "reference.hpp"
#include "rng.hpp"
#include "solver.hpp"
#include "spectral.hpp"
#include "specfun.hpp"

namespace fraclab::cli {

inline std::string num(double v, int prec = 17) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

struct ExperimentConfig {
    std::string model = "ac";
    double alpha = 0.5;
    double nu = 0.1;
    int dim = 1;
    int n = 64;
    std::string mesh = "graded";
    // 0 selects (2 - alpha) / alpha
    double grading = 0.0;
    int steps = 128;
    double T = 1.0;
    std::string scheme = "l1";
    std::string init = "0.05*cos(x)";
    // "caputo", "none" or an expression in theta and alpha
    std::string omega = "caputo";
    std::string out = "out";
    std::uint64_t seed = 42;
    // node indices on the final mesh; empty means first and last
    std::vector<int> snapshots;
    double picard_tol = 1e-10;
    int picard_max = 50;
    bool dealias = true;
    double stabilization = 0.0;
};

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    j = nlohmann::json{{"model", c.model},   {"alpha", c.alpha},       {"nu", c.nu},
                       {"dim", c.dim},       {"n", c.n},               {"mesh", c.mesh},
                       {"grading", c.grading}, {"steps", c.steps},     {"T", c.T},
                       {"scheme", c.scheme}, {"init", c.init},         {"omega", c.omega},
                       {"out", c.out},       {"seed", c.seed},         {"snapshots", c.snapshots},
                       {"picard_tol", c.picard_tol}, {"picard_max", c.picard_max},
                       {"dealias", c.dealias}, {"stabilization", c.stabilization}};
}

// Keys present in j override base; unknown keys are rejected.
inline ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c = {}) {
    if (!j.is_object()) throw FormatError("config: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const auto& v = it.value();
        if (k == "model") c.model = v.get<std::string>();
        else if (k == "alpha") c.alpha = v.get<double>();
        else if (k == "nu") c.nu = v.get<double>();
        else if (k == "dim") c.dim = v.get<int>();
        else if (k == "n") c.n = v.get<int>();
        else if (k == "mesh") c.mesh = v.get<std::string>();
        else if (k == "grading") c.grading = v.get<double>();
        else if (k == "steps") c.steps = v.get<int>();
        else if (k == "T") c.T = v.get<double>();
        else if (k == "scheme") c.scheme = v.get<std::string>();
        else if (k == "init") c.init = v.get<std::string>();
        else if (k == "omega") c.omega = v.get<std::string>();
        else if (k == "out") c.out = v.get<std::string>();
        else if (k == "seed") c.seed = v.get<std::uint64_t>();
        else if (k == "snapshots") c.snapshots = v.get<std::vector<int>>();
        else if (k == "picard_tol") c.picard_tol = v.get<double>();
        else if (k == "picard_max") c.picard_max = v.get<int>();
        else if (k == "dealias") c.dealias = v.get<bool>();
        else if (k == "stabilization") c.stabilization = v.get<double>();
        else throw FormatError("config: unknown key '" + k + "'");
    }
    return c;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
    std::ifstream is(path);
    if (!is) throw FormatError("config: cannot open " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("config: ") + e.what());
    }
    return config_from_json(j, std::move(base));
}

inline solver::ModelKind model_of(const ExperimentConfig& c) {
    if (c.model == "ac") return solver::ModelKind::allen_cahn(c.nu);
    if (c.model == "ch") return solver::ModelKind::cahn_hilliard(c.nu);
    throw PreconditionError("model must be 'ac' or 'ch'");
}

inline solver::SolverConfig solver_config_of(const ExperimentConfig& c) {
    solver::SolverConfig s;
    s.alpha = c.alpha;
    if (c.scheme == "l1") s.scheme = solver::Scheme::L1Imex;
    else if (c.scheme == "exp") s.scheme = solver::Scheme::ExpIntegrator;
    else throw PreconditionError("scheme must be 'l1' or 'exp'");
    if (c.mesh == "uniform") s.mesh = solver::TimeMesh::uniform(c.T, c.steps);
    else if (c.mesh == "graded")
        s.mesh = solver::TimeMesh::graded(c.T, c.steps, c.grading > 0.0 ? c.grading : solver::TimeMesh::default_grading(c.alpha));
    else throw PreconditionError("mesh must be 'uniform' or 'graded'");
    s.picard_tol = c.picard_tol;
    s.picard_max = c.picard_max;
    s.dealias = c.dealias;
    s.stabilization = c.stabilization;
    return s;
}

inline void validate(const ExperimentConfig& c) {
    if (!(c.nu > 0.0)) throw PreconditionError("nu must be positive");
    if (c.dim < 1 || c.dim > 3) throw PreconditionError("dim must be 1, 2 or 3");
    if (!(c.T > 0.0)) throw PreconditionError("T must be positive");
    if (c.steps < 1) throw PreconditionError("steps must be positive");
    if (!(c.picard_tol > 0.0) || c.picard_max < 1) throw PreconditionError("invalid Picard settings");
    const double amax = c.scheme == "exp" ? 1.0 : 1.0 - 1e-15;
    if (!(c.alpha > 0.0 && c.alpha <= amax)) throw PreconditionError("alpha out of range for the chosen scheme");
    (void)model_of(c);
    (void)solver_config_of(c);
    (void)spectral::TorusGrid(c.dim, c.n);
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline spectral::Field make_initial(const ExperimentConfig& c, std::uint64_t seed) {
    const spectral::TorusGrid g(c.dim, c.n);
    if (ends_with(c.init, ".fpf")) {
        auto snap = spectral::read_fpf(c.init);
        if (snap.field.grid().dim() != c.dim || snap.field.grid().n() != c.n)
            throw PreconditionError("init file grid does not match --dim/--n");
        return snap.field;
    }
    auto e = expr::Expression::parse(c.init, {"x", "y", "z"});
    SplitMix64 rng(seed);
    e.attach_rng(&rng);
    return spectral::Field::from_function(g, [&e](double x, double y, double z) {
        const double v[3] = {x, y, z};
        return e(v);
    });
}

inline std::optional<kernels::WeightFn> make_omega(const std::string& spec, double alpha) {
    if (spec.empty() || spec == "none") return std::nullopt;
    if (spec == "caputo") return kernels::WeightFn::caputo(alpha);
    auto e = expr::Expression::parse(spec, {"theta", "alpha"});
    kernels::WeightFn w;
    w.eval = [e, alpha](double t) {
        const double v[2] = {t, alpha};
        return e(v);
    };
    w.integrable = true;
    w.label = spec;
    return w;
}

inline int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        validate(cfg);
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t seed = effective_seed(cfg.seed);
        const auto model = model_of(cfg);
        const auto scfg = solver_config_of(cfg);
        const auto phi0 = make_initial(cfg, seed);
        const auto omega = make_omega(cfg.omega, cfg.alpha);

        const auto traj = solver::run(model, phi0, scfg);
        const auto trace = diagnostics::dissipation_report(traj, omega);

        namespace fs = std::filesystem;
        fs::create_directories(cfg.out);
        {
            std::ofstream csv(fs::path(cfg.out) / "energy.csv");
            if (!csv) throw FormatError("cannot write energy.csv in " + cfg.out);
            csv << "t,E,caputo_E,E_omega\n";
            for (std::size_t i = 0; i < trace.times.size(); ++i) {
                csv << num(trace.times[i]) << ',' << num(trace.values[i]) << ',' << num(trace.caputo_values[i]) << ','
                    << (trace.omega_values.empty() ? "" : num(trace.omega_values[i])) << '\n';
            }
        }
        const int N = traj.mesh.steps();
        std::vector<int> snaps = cfg.snapshots;
        if (snaps.empty()) snaps = {0, N};
        std::vector<std::string> written;
        for (int idx : snaps) {
            if (idx < 0 || idx > N) throw PreconditionError("snapshot index " + std::to_string(idx) + " outside 0.." + std::to_string(N));
            char name[64];
            std::snprintf(name, sizeof name, "snap_%06d.fpf", idx);
            spectral::write_fpf((fs::path(cfg.out) / name).string(), traj.states[static_cast<std::size_t>(idx)], cfg.alpha, cfg.nu);
            written.emplace_back(name);
        }
        const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        double max_caputo = -std::numeric_limits<double>::infinity();
        for (double v : trace.caputo_values)
            if (!std::isnan(v)) max_caputo = std::max(max_caputo, v);
        double max_mean = 0.0;
        for (const auto& s : traj.states) max_mean = std::max(max_mean, std::fabs(spectral::mean(s)));

        nlohmann::json j;
        j["config"] = cfg;
        j["seed"] = seed;
        j["steps_used"] = N;
        j["refinements"] = traj.refinements;
        j["max_picard_iterations"] = traj.max_picard_iterations;
        j["initial_energy"] = trace.values.front();
        j["final_energy"] = trace.values.back();
        j["max_caputo_energy"] = std::isfinite(max_caputo) ? nlohmann::json(max_caputo) : nlohmann::json(nullptr);
        if (!trace.omega_values.empty()) {
            j["initial_omega_energy"] = trace.omega_values.front();
            j["final_omega_energy"] = trace.omega_values.back();
            j["omega_condition"] = kernels::omega_condition_check(*omega, cfg.alpha, 64);
            j["omega_interpolation_warning"] = trace.omega_interp_warning;
        }
        j["max_abs_mean"] = max_mean;
        j["violations"] = {{"energy_bound", trace.bound_violations},
                           {"caputo_sign", trace.sign_violations},
                           {"omega_monotonicity", trace.monotone_violations}};
        j["slack"] = {{"bound", trace.slack.bound}, {"sign", trace.slack.sign}, {"monotone", trace.slack.monotone}};
        j["clean"] = trace.clean();
        j["snapshots"] = written;
        j["runtime_seconds"] = runtime;
        std::ofstream js(fs::path(cfg.out) / "summary.json");
        js << j.dump(2) << '\n';

        out << "steps " << N << " (refinements " << traj.refinements << ")\n";
        out << "E(0) " << num(trace.values.front(), 12) << "  E(T) " << num(trace.values.back(), 12) << '\n';
        out << "violations: bound " << trace.bound_violations.size() << ", sign " << trace.sign_violations.size()
            << ", omega " << trace.monotone_violations.size() << '\n';
        out << "wrote " << cfg.out << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << '\n';
        return 1;
    }
}

struct KernelsConfig {
    // a catalog name or "all"
    std::string spec = "all";
    std::vector<double> alphas = {0.25, 0.5, 0.75};
    std::string omega;
    std::string points_file;
    std::string eig_csv;
    int sets = 200;
    int max_size = 12;
    std::uint64_t seed = 42;
    double tol = 1e-8;
};

inline std::vector<double> read_points(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open points file " + path);
    std::vector<double> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            std::size_t pos = 0;
            pts.push_back(std::stod(line.substr(first), &pos));
        } catch (const std::exception&) {
            throw FormatError("points file line " + std::to_string(lineno) + ": not a number");
        }
    }
    return pts;
}

// n distinct points in (0.05, 0.95) with pairwise gap at least 1e-3
inline std::vector<double> random_points(SplitMix64& rng, int n) {
    std::vector<double> p;
    while (static_cast<int>(p.size()) < n) {
        const double x = rng.uniform(0.05, 0.95);
        bool ok = true;
        for (double q : p) ok = ok && std::fabs(q - x) >= 1e-3;
        if (ok) p.push_back(x);
    }
    return p;
}

inline std::vector<kernels::KernelKind> catalog() {
    using K = kernels::KernelKind;
    return {K::CaputoPlain, K::CaputoTimeWeight, K::CaputoEndWeight, K::OmegaWeighted, K::RatioTauOverS, K::ExpAbsDiff, K::BrownianBridge};
}

inline int cmd_kernels(const KernelsConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        std::vector<kernels::KernelKind> kinds;
        if (cfg.spec == "all") kinds = catalog();
        else if (auto k = kernels::kind_from_string(cfg.spec); k && *k != kernels::KernelKind::Custom) kinds = {*k};
        else throw PreconditionError("unknown kernel '" + cfg.spec + "'");

        std::vector<std::vector<double>> sets;
        if (!cfg.points_file.empty()) {
            sets.push_back(read_points(cfg.points_file));
        } else {
            SplitMix64 rng(effective_seed(cfg.seed));
            for (int s = 0; s < cfg.sets; ++s) sets.push_back(random_points(rng, 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_size - 1)))));
        }
        std::ofstream eig;
        if (!cfg.eig_csv.empty()) {
            eig.open(cfg.eig_csv);
            if (!eig) throw FormatError("cannot write " + cfg.eig_csv);
            eig << "kernel,alpha,set,regularization,index,eigenvalue\n";
        }
        bool all_ok = true;
        for (auto kind : kinds) {
            for (double a : cfg.alphas) {
                auto spec = kernels::KernelSpec::make(kind, a);
                if (kind == kernels::KernelKind::OmegaWeighted && !cfg.omega.empty()) {
                    auto w = make_omega(cfg.omega, a);
                    if (!w) throw PreconditionError("--omega must name a weight");
                    spec.omega = *w;
                }
                double worst = std::numeric_limits<double>::infinity();
                int failed = 0;
                for (std::size_t s = 0; s < sets.size(); ++s) {
                    const auto r = kernels::kernel_psd_check(spec, sets[s], cfg.tol);
                    worst = std::min(worst, r.worst.min_eigenvalue / std::max(1.0, r.worst.spectral_radius));
                    if (!r.passed) ++failed;
                    if (eig.is_open()) {
                        const std::vector<double> regs = kernels::is_singular(spec) ? r.regularizations : std::vector<double>{0.0};
                        for (double e : regs) {
                            const auto m = kernels::gram_matrix(e > 0.0 ? spec.regularized(e) : spec, sets[s]);
                            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
                            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                                eig << kernels::to_string(kind) << ',' << num(a) << ',' << s << ',' << num(e) << ',' << i << ','
                                    << num(es.eigenvalues()(i)) << '\n';
                        }
                    }
                }
                const bool ok = failed == 0;
                all_ok = all_ok && ok;
                out << "kernel=" << kernels::to_string(kind);
                if (kernels::is_caputo_type(kind)) out << " alpha=" << num(a, 6);
                out << " sets=" << sets.size() << " method=" << (kernels::is_singular(spec) ? "regularized" : "full")
                    << " min_scaled_eigenvalue=" << num(worst, 6) << " failed=" << failed << (ok ? " PASS" : " FAIL") << '\n';
                if (!kernels::is_caputo_type(kind)) break;  // alpha does not enter
            }
        }
        return all_ok ? 0 : 1;
    } catch (const std::exception& e) {
        err << "kernels check: " << e.what() << '\n';
        return 1;
    }
}

inline int cmd_ml(double alpha, double beta, double z, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        const auto r = specfun::mittag_leffler_eval({alpha, beta}, z);
        out << "value " << num(r.value) << '\n';
        out << "error_estimate " << num(r.error_estimate, 3) << '\n';
        out << "regime " << specfun::to_string(r.regime) << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "ml eval: " << e.what() << '\n';
        return 1;
    }
}

struct ConvergenceConfig {
    double alpha = 0.5;
    double T = 1.0;
    double beta = -1.0;
    double w0 = 1.0;
    // uniform, graded or both
    std::string mesh = "both";
    std::vector<int> Ns = {32, 64, 128, 256};
    std::string out;
};

struct ConvergenceRow {
    int N = 0;
    double error = 0.0;
    double order = 0.0;  // NaN on the first row
};

inline std::vector<ConvergenceRow> convergence_study(const ConvergenceConfig& c, bool graded) {
    const double exact = solver::linear_mode_exact({c.beta, c.w0}, c.alpha, c.T);
    std::vector<ConvergenceRow> rows;
    for (int N : c.Ns) {
        const auto mesh = graded ? solver::TimeMesh::graded(c.T, N, solver::TimeMesh::default_grading(c.alpha))
                                 : solver::TimeMesh::uniform(c.T, N);
        const auto w = solver::solve_linear_mode_l1(c.beta, c.w0, c.alpha, mesh);
        ConvergenceRow r;
        r.N = N;
        r.error = std::fabs(w.back() - exact);
        r.order = rows.empty() ? diagnostics::undefined
                               : std::log(rows.back().error / r.error) / std::log(static_cast<double>(N) / rows.back().N);
        rows.push_back(r);
    }
    return rows;
}

inline int cmd_convergence(const ConvergenceConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        if (c.Ns.size() < 2) throw PreconditionError("need at least two step counts");
        if (c.mesh != "uniform" && c.mesh != "graded" && c.mesh != "both") throw PreconditionError("mesh must be uniform, graded or both");
        std::ostringstream csv;
        const bool both = c.mesh == "both";
        csv << (both ? "mesh,N,error,observed_order\n" : "N,error,observed_order\n");
        double last_uniform = 0.0;
        double last_graded = 0.0;
        for (int g = 0; g < 2; ++g) {
            const bool graded = g == 1;
            if (!both && graded != (c.mesh == "graded")) continue;
            const auto rows = convergence_study(c, graded);
            for (const auto& r : rows) {
                if (both) csv << (graded ? "graded," : "uniform,");
                csv << r.N << ',' << num(r.error) << ',' << num(r.order) << '\n';
            }
            (graded ? last_graded : last_uniform) = rows.back().order;
        }
        if (c.out.empty()) {
            out << csv.str();
        } else {
            std::ofstream os(c.out);
            if (!os) throw FormatError("cannot write " + c.out);
            os << csv.str();
        }
        if (both && !(last_graded > last_uniform)) {
            err << "convergence: graded order " << num(last_graded, 4) << " does not exceed uniform order " << num(last_uniform, 4) << '\n';
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        err << "convergence: " << e.what() << '\n';
        return 1;
    }
}

struct SelfCheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Oracle agreement: highprec series vs mittag_leffler, dense vs product-integration
// quadratic forms, brute Volterra vs the Mittag-Leffler solution.
inline std::vector<SelfCheckItem> self_check_items() {
    std::vector<SelfCheckItem> items;
    {
        int compared = 0;
        int skipped = 0;
        double worst = 0.0;
        for (double a : {0.3, 0.5, 0.7, 0.9, 1.0}) {
            for (double b : {a, 1.0, 1.0 + a}) {
                for (int i = -50; i <= 50; ++i) {
                    const double z = 0.5 * i;
                    reference::HighPrecResult h;
                    try {
                        h = reference::highprec_ml(a, b, z, 4000);
                    } catch (const EvaluationError&) {
                        ++skipped;
                        continue;
                    }
                    if (!std::isfinite(h.value) || h.rounding_bound > 1e-11 * std::fabs(h.value)) {
                        ++skipped;
                        continue;
                    }
                    const double v = specfun::mittag_leffler({a, b}, z);
                    worst = std::max(worst, std::fabs(v - h.value) / std::fabs(h.value));
                    ++compared;
                }
            }
        }
        items.push_back({"highprec_ml vs mittag_leffler (|z|<=25)", worst <= 1e-9 && compared > 0,
                         "compared " + std::to_string(compared) + ", uncertified " + std::to_string(skipped) + ", worst rel " + num(worst, 3)});
    }
    {
        // bounded outer weights against the dense midpoint oracle
        double worst = 0.0;
        const std::vector<std::function<double(double)>> fs = {
            [](double t) { return std::sin(2.0 * std::numbers::pi * t); }, [](double t) { return 1.0 + t; },
            [](double t) { return t * (1.0 - t) - 0.1; }};
        const int nq = 1024;
        for (double a : {0.25, 0.5, 0.75}) {
            for (auto kind : {kernels::KernelKind::CaputoPlain, kernels::KernelKind::CaputoTimeWeight}) {
                for (const auto& f : fs) {
                    std::vector<double> s(nq + 1);
                    for (int i = 0; i <= nq; ++i) s[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / nq);
                    const double fast = kernels::singular_quadratic_form(kernels::KernelSpec::make(kind, a), s, nq).refined_value;
                    reference::Kernel2 K;
                    if (kind == kernels::KernelKind::CaputoPlain) K = [a](double x, double y) { return std::pow(x - y, -a); };
                    else K = [a](double x, double y) { return std::pow(x, a) * std::pow(x - y, -a); };
                    const double slow = reference::dense_quadratic_form(K, f, 2048, a);
                    worst = std::max(worst, std::fabs(fast - slow) / std::max(std::fabs(slow), 1e-12));
                }
            }
        }
        items.push_back({"dense_quadratic_form vs singular_quadratic_form", worst <= 1e-4, "worst rel " + num(worst, 3)});
    }
    {
        // all three weights, polynomial f, against Beta-function closed forms
        double worst = 0.0;
        const std::vector<std::vector<double>> polys = {{1.0, 1.0}, {-0.1, 1.0, -1.0}, {0.3, -2.0, 0.0, 1.5}};
        const int nq = 1024;
        for (double a : {0.25, 0.5, 0.75}) {
            for (auto kind : {kernels::KernelKind::CaputoPlain, kernels::KernelKind::CaputoTimeWeight, kernels::KernelKind::CaputoEndWeight}) {
                for (const auto& c : polys) {
                    std::vector<double> s(nq + 1);
                    for (int i = 0; i <= nq; ++i) {
                        const double t = static_cast<double>(i) / nq;
                        double v = 0.0;
                        for (std::size_t m = c.size(); m-- > 0;) v = v * t + c[m];
                        s[static_cast<std::size_t>(i)] = v;
                    }
                    const double fast = kernels::singular_quadratic_form(kernels::KernelSpec::make(kind, a), s, nq).refined_value;
                    const double exact = reference::polynomial_caputo_form(c, a, kind);
                    worst = std::max(worst, std::fabs(fast - exact) / std::fabs(exact));
                }
            }
        }
        items.push_back({"singular_quadratic_form vs Beta-function closed forms", worst <= 1e-4, "worst rel " + num(worst, 3)});
    }
    {
        double worst = 0.0;
        for (double a : {0.3, 0.5, 0.7}) {
            const auto mesh = solver::TimeMesh::graded(1.0, 1024, solver::TimeMesh::default_grading(a));
            const auto w = reference::brute_volterra_solve({-1.0, 1.0}, a, mesh);
            worst = std::max(worst, std::fabs(w.back() - solver::linear_mode_exact({-1.0, 1.0}, a, 1.0)));
        }
        items.push_back({"brute_volterra_solve vs linear_mode_exact (N=1024)", worst <= 1e-5, "worst abs " + num(worst, 3)});
    }
    {
        const auto w = reference::brute_volterra_solve({-1.0, 1.0}, 1.0, solver::TimeMesh::uniform(1.0, 1024));
        const double e = std::fabs(w.back() - std::exp(-1.0));
        items.push_back({"brute_volterra_solve at alpha=1 vs exp(-t)", e <= 1e-6, "abs " + num(e, 3)});
    }
    return items;
}

inline int cmd_selfcheck(std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        bool ok = true;
        for (const auto& it : self_check_items()) {
            out << (it.passed ? "ok   " : "FAIL ") << it.name << "  [" << it.detail << "]\n";
            ok = ok && it.passed;
        }
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        err << "self-check: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fraclab::cli
