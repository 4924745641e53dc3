#pragma once

// Time-fractional Allen-Cahn / Cahn-Hilliard integrators.

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "spectral.hpp"
#include "specfun.hpp"

namespace fraclab::solver {

using spectral::cplx;
using spectral::Field;

enum class ModelVariant { AllenCahn, CahnHilliard };

struct ModelKind {
    ModelVariant variant = ModelVariant::AllenCahn;
    double nu = 0.1;

    static ModelKind allen_cahn(double nu) { return {ModelVariant::AllenCahn, nu}; }
    static ModelKind cahn_hilliard(double nu) { return {ModelVariant::CahnHilliard, nu}; }

    spectral::OperatorSymbol generator() const {
        return variant == ModelVariant::AllenCahn ? spectral::OperatorSymbol::allen_cahn_generator(nu)
                                                  : spectral::OperatorSymbol::cahn_hilliard_generator(nu);
    }
    // multiplier in front of the cubic: -1 (Allen-Cahn) or -|k|^2 (Cahn-Hilliard)
    double coupling(double k2) const { return variant == ModelVariant::AllenCahn ? -1.0 : -k2; }
};

enum class Grading { Uniform, Graded };

class TimeMesh {
public:
    TimeMesh() = default;

    static TimeMesh uniform(double T, int steps) { return make(T, steps, Grading::Uniform, 1.0); }
    static TimeMesh graded(double T, int steps, double r) { return make(T, steps, Grading::Graded, r); }
    static double default_grading(double alpha) { return (2.0 - alpha) / alpha; }

    static TimeMesh from_nodes(std::vector<double> nodes) {
        if (nodes.size() < 2 || nodes.front() != 0.0) throw PreconditionError("TimeMesh: nodes must start at 0");
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (!(nodes[i] > nodes[i - 1])) throw PreconditionError("TimeMesh: nodes must be strictly increasing");
        TimeMesh m;
        m.nodes_ = std::move(nodes);
        m.grading_ = Grading::Uniform;
        m.r_ = 1.0;
        m.custom_ = true;
        return m;
    }

    const std::vector<double>& nodes() const { return nodes_; }
    double operator[](std::size_t i) const { return nodes_[i]; }
    int steps() const { return static_cast<int>(nodes_.size()) - 1; }
    double final_time() const { return nodes_.back(); }
    Grading grading() const { return grading_; }
    double exponent() const { return r_; }

    // same grading, twice the steps
    TimeMesh refined() const {
        if (custom_) {
            std::vector<double> n;
            for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
                n.push_back(nodes_[i]);
                n.push_back(0.5 * (nodes_[i] + nodes_[i + 1]));
            }
            n.push_back(nodes_.back());
            return from_nodes(std::move(n));
        }
        return make(final_time(), 2 * steps(), grading_, r_);
    }

private:
    static TimeMesh make(double T, int steps, Grading g, double r) {
        if (!(T > 0.0)) throw PreconditionError("TimeMesh: final time must be positive");
        if (steps < 1) throw PreconditionError("TimeMesh: need at least one step");
        if (g == Grading::Graded && !(r >= 1.0)) throw PreconditionError("TimeMesh: grading exponent must be at least 1");
        TimeMesh m;
        m.grading_ = g;
        m.r_ = (g == Grading::Uniform) ? 1.0 : r;
        m.nodes_.resize(static_cast<std::size_t>(steps) + 1);
        for (int i = 0; i <= steps; ++i) {
            const double s = static_cast<double>(i) / steps;
            m.nodes_[static_cast<std::size_t>(i)] = (g == Grading::Uniform) ? T * s : T * std::pow(s, r);
        }
        m.nodes_.back() = T;
        return m;
    }

    std::vector<double> nodes_{0.0, 1.0};
    Grading grading_ = Grading::Uniform;
    double r_ = 1.0;
    bool custom_ = false;
};

// b_j, j < n, with D^alpha u(t_n) ~ sum_j b_j (u_{j+1} - u_j).
inline std::vector<double> l1_weights(const TimeMesh& mesh, int n, double alpha) {
    if (n < 1 || n > mesh.steps()) throw PreconditionError("l1_weights: need 1 <= n <= N");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("l1_weights: alpha must lie in (0,1)");
    const double g = specfun::gamma_fn(2.0 - alpha);
    const double p = 1.0 - alpha;
    const double tn = mesh[static_cast<std::size_t>(n)];
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double a = mesh[static_cast<std::size_t>(j)];
        const double c = mesh[static_cast<std::size_t>(j) + 1];
        b[static_cast<std::size_t>(j)] = (std::pow(tn - a, p) - std::pow(tn - c, p)) / (g * (c - a));
    }
    return b;
}

inline double l1_caputo(const TimeMesh& mesh, std::span<const double> values, int n, double alpha) {
    if (values.size() < static_cast<std::size_t>(n) + 1) throw PreconditionError("l1_caputo: not enough values");
    const auto b = l1_weights(mesh, n, alpha);
    double s = 0.0;
    for (int j = 0; j < n; ++j)
        s += b[static_cast<std::size_t>(j)] * (values[static_cast<std::size_t>(j) + 1] - values[static_cast<std::size_t>(j)]);
    return s;
}

// L1 scheme for the scalar problem D^alpha w = beta w, values at every node.
inline std::vector<double> solve_linear_mode_l1(double beta_coeff, double w0, double alpha, const TimeMesh& mesh) {
    std::vector<double> w{w0};
    w.reserve(static_cast<std::size_t>(mesh.steps()) + 1);
    for (int n = 1; n <= mesh.steps(); ++n) {
        const auto b = l1_weights(mesh, n, alpha);
        double h = 0.0;
        for (int j = 0; j + 1 < n; ++j)
            h += b[static_cast<std::size_t>(j)] * (w[static_cast<std::size_t>(j) + 1] - w[static_cast<std::size_t>(j)]);
        const double bn = b.back();
        if (!(bn - beta_coeff > 0.0)) throw NonConvergenceError("solve_linear_mode_l1: step too large", n);
        w.push_back((bn * w.back() - h) / (bn - beta_coeff));
    }
    return w;
}

enum class Scheme { L1Imex, ExpIntegrator };

struct SolverConfig {
    double alpha = 0.5;
    TimeMesh mesh;
    Scheme scheme = Scheme::L1Imex;
    double picard_tol = 1e-10;
    int picard_max = 50;
    bool dealias = true;
    // S: moves S*phi (Allen-Cahn) or -S*Laplacian(phi) (Cahn-Hilliard) from the
    // nonlinearity into the generator; only the exponential integrator sees it
    double stabilization = 0.0;
    bool include_cubic = true;
};

struct Trajectory {
    TimeMesh mesh;
    std::vector<Field> states;
    ModelKind model;
    SolverConfig config;
    int refinements = 0;
    int max_picard_iterations = 0;
    std::vector<double> times() const { return mesh.nodes(); }
};

// Raised when the implicit step cannot be solved; run() reacts by refining once.
class StepFailure : public NonConvergenceError {
public:
    using NonConvergenceError::NonConvergenceError;
};

struct LinearModeProblem {
    double beta_coeff = -1.0;
    double w0 = 1.0;
};

inline double linear_mode_exact(const LinearModeProblem& p, double alpha, double t) {
    if (!(t >= 0.0)) throw DomainError("linear_mode_exact: t must be non-negative");
    if (t == 0.0) return p.w0;
    return specfun::mittag_leffler({alpha, 1.0}, p.beta_coeff * std::pow(t, alpha)) * p.w0;
}

namespace detail {

struct ModeTables {
    std::vector<double> lambda;
    std::vector<double> coupling;
};

inline ModeTables mode_tables(const ModelKind& model, const spectral::TorusGrid& g, double stabilization = 0.0) {
    ModeTables t;
    t.lambda.resize(g.size());
    t.coupling.resize(g.size());
    const auto gen = model.generator();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.wavevector(i);
        const double k2 = spectral::k_squared(k);
        t.coupling[i] = model.coupling(k2);
        t.lambda[i] = gen(k) - stabilization * std::fabs(t.coupling[i]);
    }
    return t;
}

inline double l2_of_coeffs(const spectral::TorusGrid& g, const std::vector<cplx>& c) {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    const double nd = static_cast<double>(g.size());
    return std::sqrt(s * g.volume() / (nd * nd));
}

inline void check_alpha(const SolverConfig& cfg) {
    if (cfg.scheme == Scheme::L1Imex && !(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw DomainError("solver: alpha must lie in (0,1) for the L1 scheme");
    if (cfg.scheme == Scheme::ExpIntegrator && !(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
        throw DomainError("solver: alpha must lie in (0,1] for the exponential integrator");
}

}  // namespace detail

// One L1 step: sum_j b_j (u_{j+1} - u_j) = lambda u_n + g c(u_n) per mode, solved by a
// shifted Picard iteration whose fixed point is the implicit solution.
inline Field step_l1(const Trajectory& traj, int n, int* iterations = nullptr) {
    const auto& cfg = traj.config;
    const auto& mesh = traj.mesh;
    if (n < 1 || n > mesh.steps() || traj.states.size() < static_cast<std::size_t>(n))
        throw PreconditionError("step_l1: states[0..n-1] must be populated");
    const auto& g = traj.states[0].grid();
    const auto tab = detail::mode_tables(traj.model, g);
    const auto b = l1_weights(mesh, n, cfg.alpha);
    const std::size_t m = g.size();

    std::vector<cplx> hist(m, cplx(0.0, 0.0));
    for (int j = 0; j + 1 < n; ++j) {
        const auto& a = traj.states[static_cast<std::size_t>(j)].spectral();
        const auto& c = traj.states[static_cast<std::size_t>(j) + 1].spectral();
        const double w = b[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < m; ++i) hist[i] += w * (c[i] - a[i]);
    }
    const double bn = b.back();
    const Field& prev = traj.states[static_cast<std::size_t>(n) - 1];
    const auto& up = prev.spectral();
    for (std::size_t i = 0; i < m; ++i)
        if (!(bn - tab.lambda[i] > 0.0))
            throw StepFailure("step " + std::to_string(n) + ": step too large for the unstable modes", n);

    std::vector<cplx> rhs0(m);
    for (std::size_t i = 0; i < m; ++i) rhs0[i] = bn * up[i] - hist[i];

    if (!cfg.include_cubic) {
        std::vector<cplx> out(m);
        for (std::size_t i = 0; i < m; ++i) out[i] = rhs0[i] / (bn - tab.lambda[i]);
        if (iterations) *iterations = 0;
        return spectral::real_field(g, std::move(out));
    }

    double peak = 0.0;
    for (double v : prev.physical()) peak = std::max(peak, v * v);

    Field iterate = prev;
    for (int it = 1; it <= cfg.picard_max; ++it) {
        for (double v : iterate.physical()) peak = std::max(peak, v * v);
        const double shift = 1.5 * peak;
        const Field cubic = spectral::nonlinear_term(iterate, cfg.dealias);
        const auto& cs = cubic.spectral();
        const auto& us = iterate.spectral();
        std::vector<cplx> next(m);
        std::vector<cplx> diff(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double ga = std::fabs(tab.coupling[i]);
            next[i] = ((rhs0[i] + tab.coupling[i] * cs[i]) + shift * ga * us[i]) / ((bn - tab.lambda[i]) + shift * ga);
            diff[i] = next[i] - us[i];
        }
        const double inc = detail::l2_of_coeffs(g, diff);
        iterate = spectral::real_field(g, std::move(next));
            if (inc <= cfg.picard_tol) {
            if (iterations) *iterations = it;
            return iterate;
        }
    }
    throw StepFailure("step " + std::to_string(n) + ": Picard iteration did not converge", n);
}

namespace detail {

// Exponential-integrator weights for one group of modes sharing lambda.
struct PropagatorGroup {
    double lambda = 0.0;
    std::vector<std::size_t> modes;
};

inline std::vector<PropagatorGroup> group_modes(const std::vector<double>& lambda) {
    std::map<double, std::size_t> index;
    std::vector<PropagatorGroup> groups;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        auto [it, inserted] = index.try_emplace(lambda[i], groups.size());
        if (inserted) groups.push_back({lambda[i], {}});
        groups[it->second].modes.push_back(i);
    }
    return groups;
}

// u^alpha E_{alpha,alpha+1}(lambda u^alpha) = int_0^u s^(alpha-1) E_{alpha,alpha}(lambda s^alpha) ds
inline double phi_integral(double alpha, double lambda, double u) {
    if (u <= 0.0) return 0.0;
    const double ua = std::pow(u, alpha);
    return ua * specfun::mittag_leffler({alpha, alpha + 1.0}, lambda * ua);
}

inline std::vector<cplx> nonlinearity(const ModelKind& model, const ModeTables& tab, const Field& u, bool dealias,
                                      double stabilization) {
    const Field c = spectral::nonlinear_term(u, dealias);
    const auto& cs = c.spectral();
    const auto& us = u.spectral();
    std::vector<cplx> out(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
        out[i] = tab.coupling[i] * cs[i] + stabilization * std::fabs(tab.coupling[i]) * us[i];
    (void)model;
    return out;
}

}  // namespace detail

// u_n = E_{a,1}(lambda t_n^a) u_0 + sum_j [Phi(t_n - t_j) - Phi(t_n - t_{j+1})] N(u_j)
// with the nonlinearity frozen at the left end of each subinterval.
inline Field step_exp_integrator(const Trajectory& traj, int n) {
    const auto& cfg = traj.config;
    const auto& mesh = traj.mesh;
    if (n < 1 || n > mesh.steps() || traj.states.size() < static_cast<std::size_t>(n))
        throw PreconditionError("step_exp_integrator: states[0..n-1] must be populated");
    const auto& g = traj.states[0].grid();
    const double S = cfg.stabilization;
    const auto tab = detail::mode_tables(traj.model, g, S);
    const auto groups = detail::group_modes(tab.lambda);
    const double a = cfg.alpha;
    const double tn = mesh[static_cast<std::size_t>(n)];
    const auto& u0 = traj.states[0].spectral();

    std::vector<std::vector<cplx>> nl;
    if (cfg.include_cubic) {
        nl.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            nl.push_back(detail::nonlinearity(traj.model, tab, traj.states[static_cast<std::size_t>(j)], cfg.dealias, S));
    }
    std::vector<cplx> out(g.size());
    std::vector<double> w(static_cast<std::size_t>(n));
    for (const auto& grp : groups) {
        const double prop = specfun::mittag_leffler({a, 1.0}, grp.lambda * std::pow(tn, a));
        if (cfg.include_cubic) {
            double upper = detail::phi_integral(a, grp.lambda, tn);
            for (int j = 0; j < n; ++j) {
                const double lower = detail::phi_integral(a, grp.lambda, tn - mesh[static_cast<std::size_t>(j) + 1]);
                w[static_cast<std::size_t>(j)] = upper - lower;
                upper = lower;
            }
        }
        for (std::size_t i : grp.modes) {
            cplx v = prop * u0[i];
            if (cfg.include_cubic)
                for (int j = 0; j < n; ++j) v += w[static_cast<std::size_t>(j)] * nl[static_cast<std::size_t>(j)][i];
            out[i] = v;
        }
    }
    return spectral::real_field(g, std::move(out));
}

struct PicardProbe {
    std::vector<double> gaps;
    bool diverged = false;
};

// Iterates phi <- E_{a,1}(t L) phi0 + t E_{a,a+1}(t L) N(phi) at a single rescaled time t.
inline PicardProbe picard_verify(const ModelKind& model, const Field& phi0, double alpha, double t_tilde, int iters,
                                 bool dealias = true) {
    if (iters < 2) throw PreconditionError("picard_verify: need at least 2 iterations");
    if (!(t_tilde > 0.0)) throw PreconditionError("picard_verify: t_tilde must be positive");
    const Field start = spectral::with_both(phi0);
    const auto& g = start.grid();
    const auto tab = detail::mode_tables(model, g);
    const auto groups = detail::group_modes(tab.lambda);
    std::vector<double> prop(g.size());
    std::vector<double> duhamel(g.size());
    for (const auto& grp : groups) {
        const double z = t_tilde * grp.lambda;
        const double p = specfun::mittag_leffler({alpha, 1.0}, z);
        const double d = t_tilde * specfun::mittag_leffler({alpha, alpha + 1.0}, z);
        for (std::size_t i : grp.modes) {
            prop[i] = p;
            duhamel[i] = d;
        }
    }
    PicardProbe out;
    Field cur = start;
    int rising = 0;
    for (int it = 0; it < iters; ++it) {
        const Field c = spectral::nonlinear_term(cur, dealias);
        const auto& cs = c.spectral();
        const auto& s0 = start.spectral();
        const auto& us = cur.spectral();
        std::vector<cplx> next(g.size());
        std::vector<cplx> diff(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            next[i] = prop[i] * s0[i] + duhamel[i] * tab.coupling[i] * cs[i];
            diff[i] = next[i] - us[i];
        }
        const double gap = detail::l2_of_coeffs(g, diff);
        if (!out.gaps.empty() && gap > out.gaps.back()) {
            if (++rising >= 3) out.diverged = true;
        } else {
            rising = 0;
        }
        out.gaps.push_back(gap);
        cur = spectral::real_field(g, std::move(next));
        if (!std::isfinite(gap)) {
            out.diverged = true;
            break;
        }
    }
    return out;
}

inline void validate_initial(const ModelKind& model, const Field& phi0) {
    if (!(model.nu > 0.0)) throw PreconditionError("model: nu must be positive");
    if (model.variant == ModelVariant::CahnHilliard) {
        const Field f = spectral::with_both(phi0);
        double peak = 1.0;
        for (double v : f.physical()) peak = std::max(peak, std::fabs(v));
        if (std::fabs(spectral::mean(f)) > 1e-12 * peak)
            throw PreconditionError("Cahn-Hilliard requires mean-zero initial data");
    }
}

inline Trajectory run(const ModelKind& model, const Field& phi0, const SolverConfig& config) {
    detail::check_alpha(config);
    if (!(config.picard_tol > 0.0) || config.picard_max < 1) throw PreconditionError("solver: invalid Picard settings");
    validate_initial(model, phi0);
    TimeMesh mesh = config.mesh;
    for (int attempt = 0;; ++attempt) {
        Trajectory traj;
        traj.model = model;
        traj.config = config;
        traj.config.mesh = mesh;
        traj.mesh = mesh;
        traj.refinements = attempt;
        traj.states.reserve(static_cast<std::size_t>(mesh.steps()) + 1);
        traj.states.push_back(spectral::with_both(phi0));
        try {
            for (int n = 1; n <= mesh.steps(); ++n) {
                if (config.scheme == Scheme::L1Imex) {
                    int its = 0;
                    traj.states.push_back(step_l1(traj, n, &its));
                    traj.max_picard_iterations = std::max(traj.max_picard_iterations, its);
                } else {
                    traj.states.push_back(step_exp_integrator(traj, n));
                }
            }
            return traj;
        } catch (const StepFailure& e) {
            if (attempt >= 1)
                throw NonConvergenceError(std::string("run aborted after refinement: ") + e.what(), e.step());
            mesh = mesh.refined();
        }
    }
}

}  // namespace fraclab::solver
