#pragma once

// Ginzburg-Landau energy and dissipation diagnostics along a trajectory.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"
#include "solver.hpp"
#include "spectral.hpp"

namespace fraclab::diagnostics {

using spectral::Field;

struct Slack {
    double bound = 1e-8;
    double sign = 1e-6;
    double monotone = 1e-6;
};

// int nu/2 |grad phi|^2 + (1 - phi^2)^2 / 4
inline double energy(const Field& f0, double nu) {
    const Field f = spectral::with_both(f0);
    const auto& g = f.grid();
    double quartic = 0.0;
    for (double v : f.physical()) {
        const double w = 1.0 - v * v;
        quartic += 0.25 * w * w;
    }
    quartic *= std::pow(g.spacing(), g.dim());
    double grad = 0.0;
    const auto& c = f.spectral();
    for (std::size_t i = 0; i < g.size(); ++i) grad += spectral::k_squared(g.wavevector(i)) * std::norm(c[i]);
    const double nd = static_cast<double>(g.size());
    return quartic + 0.5 * nu * grad * g.volume() / (nd * nd);
}

inline constexpr double undefined = std::numeric_limits<double>::quiet_NaN();

struct EnergyTrace {
    solver::TimeMesh mesh;
    std::vector<double> times;
    std::vector<double> values;
    double alpha = 0.5;
    // NaN at t_0 and t_N
    std::vector<double> caputo_values;
    // empty unless a weight was attached
    std::vector<double> omega_values;
    Slack slack;

    std::vector<int> bound_violations;
    std::vector<int> sign_violations;
    std::vector<int> monotone_violations;
    std::vector<int> increase_violations;
    bool omega_interp_warning = false;

    int first_increase() const { return increase_violations.empty() ? -1 : increase_violations.front(); }
    bool clean() const {
        return bound_violations.empty() && sign_violations.empty() && monotone_violations.empty();
    }
};

inline EnergyTrace make_trace(const solver::TimeMesh& mesh, std::vector<double> values, double alpha) {
    if (values.size() != mesh.nodes().size()) throw PreconditionError("EnergyTrace: one value per mesh node");
    EnergyTrace t;
    t.mesh = mesh;
    t.times = mesh.nodes();
    t.values = std::move(values);
    t.alpha = alpha;
    return t;
}

// L1 Caputo derivative of the energy series at t_1 .. t_{N-1}.
inline std::vector<double> caputo_of_trace(const EnergyTrace& trace) {
    if (trace.values.size() < 3) throw PreconditionError("caputo_of_trace: need at least 3 nodes");
    const int N = trace.mesh.steps();
    std::vector<double> out(trace.values.size(), undefined);
    for (int n = 1; n < N; ++n)
        out[static_cast<std::size_t>(n)] = solver::l1_caputo(trace.mesh, trace.values, n, trace.alpha);
    return out;
}

struct OmegaEnergy {
    double value = 0.0;
    bool warning = false;
};

namespace detail {

inline Field state_at(const solver::Trajectory& traj, double s) {
    const auto& t = traj.mesh.nodes();
    if (s <= 0.0) return traj.states.front();
    if (s >= t.back()) return traj.states.back();
    const auto it = std::upper_bound(t.begin(), t.end(), s);
    const std::size_t j = static_cast<std::size_t>(it - t.begin()) - 1;
    const double w = (s - t[j]) / (t[j + 1] - t[j]);
    return spectral::lerp_spectral(traj.states[j], traj.states[j + 1], w);
}

}  // namespace detail

// E_omega(t) = int_0^1 omega(theta) E(phi(theta t)) dtheta, Gauss-Jacobi in theta.
inline OmegaEnergy omega_energy(const solver::Trajectory& traj, const kernels::WeightFn& omega, double t, int n_quad = 64) {
    if (!omega.integrable) throw PreconditionError("omega_energy: weight must be integrable");
    if (t < 0.0 || t > traj.mesh.final_time() * (1.0 + 1e-14)) throw PreconditionError("omega_energy: t outside the trajectory");
    const double a = omega.exponent_at_zero;
    const double b = omega.exponent_at_one;
    const auto rule = quadrature::gauss_jacobi01(n_quad, a, b);
    const double nu = traj.model.nu;
    OmegaEnergy out;
    if (t == 0.0) {
        double mass = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double th = rule.nodes[i];
            mass += rule.weights[i] * omega(th) / (std::pow(th, a) * std::pow(1.0 - th, b));
        }
        out.value = energy(traj.states.front(), nu) * mass;
        return out;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double th = rule.nodes[i];
        const double ratio = omega(th) / (std::pow(th, a) * std::pow(1.0 - th, b));
        s += rule.weights[i] * ratio * energy(detail::state_at(traj, th * t), nu);
    }
    out.value = s;
    const auto& nodes = traj.mesh.nodes();
    double widest = 0.0;
    for (std::size_t j = 0; j + 1 < nodes.size() && nodes[j] < t; ++j) widest = std::max(widest, nodes[j + 1] - nodes[j]);
    out.warning = widest > t / n_quad;
    return out;
}

// Marks nodes that break the bound, sign and monotonicity checks.
inline void flag_violations(EnergyTrace& tr) {
    tr.bound_violations.clear();
    tr.sign_violations.clear();
    tr.monotone_violations.clear();
    tr.increase_violations.clear();
    const double e0 = tr.values.empty() ? 0.0 : tr.values.front();
    for (std::size_t n = 0; n < tr.values.size(); ++n) {
        if (tr.values[n] > e0 + tr.slack.bound) tr.bound_violations.push_back(static_cast<int>(n));
        if (n > 0 && tr.values[n] > tr.values[n - 1] + tr.slack.bound) tr.increase_violations.push_back(static_cast<int>(n));
    }
    for (std::size_t n = 0; n < tr.caputo_values.size(); ++n)
        if (!std::isnan(tr.caputo_values[n]) && tr.caputo_values[n] > tr.slack.sign)
            tr.sign_violations.push_back(static_cast<int>(n));
    for (std::size_t n = 1; n < tr.omega_values.size(); ++n)
        if (tr.omega_values[n] > tr.omega_values[n - 1] + tr.slack.monotone)
            tr.monotone_violations.push_back(static_cast<int>(n));
}

inline EnergyTrace dissipation_report(const solver::Trajectory& traj, const std::optional<kernels::WeightFn>& omega = std::nullopt,
                                      const Slack& slack = {}) {
    if (traj.states.size() != traj.mesh.nodes().size()) throw PreconditionError("dissipation_report: incomplete trajectory");
    std::vector<double> e;
    e.reserve(traj.states.size());
    for (const auto& s : traj.states) e.push_back(energy(s, traj.model.nu));
    EnergyTrace tr = make_trace(traj.mesh, std::move(e), traj.config.alpha);
    tr.slack = slack;
    if (tr.alpha < 1.0 && tr.values.size() >= 3) tr.caputo_values = caputo_of_trace(tr);
    else tr.caputo_values.assign(tr.values.size(), undefined);
    if (omega) {
        tr.omega_values.reserve(tr.times.size());
        for (double t : tr.times) {
            const auto r = omega_energy(traj, *omega, t);
            tr.omega_values.push_back(r.value);
            tr.omega_interp_warning = tr.omega_interp_warning || r.warning;
        }
    }
    flag_violations(tr);
    return tr;
}

}  // namespace fraclab::diagnostics
