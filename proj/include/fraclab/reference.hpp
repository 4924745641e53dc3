#pragma once

// Slow, independent oracles. Nothing here calls into specfun, kernels or solver
// numerics; only TimeMesh, LinearModeProblem and KernelKind are shared as plain data.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"
#include "kernels.hpp"
#include "solver.hpp"

namespace fraclab::reference {

enum class Precision { Double, Compensated };

struct OracleConfig {
    int n_dense = 1024;
    Precision precision = Precision::Compensated;
};

struct HighPrecResult {
    double value = 0.0;
    double truncation_bound = 0.0;
    // first-order bound on accumulated term rounding
    double rounding_bound = 0.0;
    int terms = 0;
};

namespace detail {

// Knuth TwoSum accumulator (double-double)
struct DD {
    double hi = 0.0;
    double lo = 0.0;
    void add(double x) {
        const double s = hi + x;
        const double bp = s - hi;
        const double err = (hi - (s - bp)) + (x - bp);
        hi = s;
        lo += err;
    }
    double value() const { return hi + lo; }
};

inline double series_term(double alpha, double beta, double z, int m, double* rel_err) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double x = alpha * m + beta;
    const double g = std::tgamma(x);
    const double p = std::pow(z, m);
    if (std::isfinite(g) && std::isfinite(p) && g != 0.0 && p != 0.0 && std::fabs(p) > 1e-290) {
        *rel_err = 8.0 * eps;
        return p / g;
    }
    if (z == 0.0) {
        *rel_err = 0.0;
        return 0.0;
    }
    const double lg = std::lgamma(x);
    const double e = m * std::log(std::fabs(z)) - lg;
    *rel_err = eps * (4.0 + std::fabs(m * std::log(std::fabs(z))) + std::fabs(lg));
    const double mag = std::exp(e);
    const double sign_g = (x > 0.0 || static_cast<long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
    const double sign_z = (z < 0.0 && m % 2 == 1) ? -1.0 : 1.0;
    return sign_g * sign_z * mag;
}

}  // namespace detail

// Taylor series sum_{m<terms} z^m / Gamma(alpha m + beta) with a geometric tail bound.
inline HighPrecResult highprec_ml(double alpha, double beta, double z, int terms, Precision prec = Precision::Compensated) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw DomainError("highprec_ml: alpha and beta must be positive");
    if (std::fabs(z) > 30.0) throw PreconditionError("highprec_ml: |z| must be at most 30");
    if (terms < 1) throw PreconditionError("highprec_ml: need at least one term");
    detail::DD acc;
    double naive = 0.0;
    double abs_err = 0.0;
    double last = 0.0;
    for (int m = 0; m < terms; ++m) {
        double rel = 0.0;
        const double t = detail::series_term(alpha, beta, z, m, &rel);
        acc.add(t);
        naive += t;
        abs_err += std::fabs(t) * rel;
        last = t;
    }
    HighPrecResult r;
    r.terms = terms;
    r.value = (prec == Precision::Compensated) ? acc.value() : naive;
    // Gamma(x)/Gamma(x+alpha) decreases in x, so term ratios decrease from here on
    double rel = 0.0;
    const double next = detail::series_term(alpha, beta, z, terms, &rel);
    const double q = (last != 0.0) ? std::fabs(next / last) : 0.0;
    if (next == 0.0) {
        r.truncation_bound = 0.0;
    } else if (q < 1.0) {
        r.truncation_bound = std::fabs(next) / (1.0 - q);
    } else {
        r.truncation_bound = std::numeric_limits<double>::infinity();
    }
    r.rounding_bound = abs_err + std::numeric_limits<double>::epsilon() * std::fabs(r.value) +
                       (prec == Precision::Double ? terms * std::numeric_limits<double>::epsilon() * std::fabs(r.value) : 0.0);
    const double scale = std::max(std::fabs(r.value), std::numeric_limits<double>::min());
    if (!(r.truncation_bound <= 1e-13 * scale))
        throw EvaluationError("highprec_ml: truncation bound exceeds 1e-13 relative; add terms");
    return r;
}

using Kernel2 = std::function<double(double, double)>;
using Fn1 = std::function<double(double)>;

// Midpoint double sum over y < x on an n-cell grid. With singular_order a > 0 the kernel
// is taken as (x-y)^(-a) s(x,y) and each cell pair uses the exact integral of (x-y)^(-a).
inline double dense_quadratic_form(const Kernel2& K, const Fn1& f, int n, double singular_order = 0.0) {
    if (n < 1) throw PreconditionError("dense_quadratic_form: n must be positive");
    if (singular_order >= 1.0) throw DomainError("dense_quadratic_form: singularity of order >= 1 is not integrable");
    if (singular_order < 0.0) throw DomainError("dense_quadratic_form: negative singularity order");
    const double h = 1.0 / n;
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> fx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = (i + 0.5) * h;
        fx[static_cast<std::size_t>(i)] = f(x[static_cast<std::size_t>(i)]);
    }
    const double a = singular_order;
    detail::DD acc;
    if (a == 0.0) {
        for (int i = 0; i < n; ++i) {
            const double xi = x[static_cast<std::size_t>(i)];
            // diagonal cell: half the cell, kernel at the centroid of the lower triangle
            acc.add(0.5 * h * h * K(xi + h / 6.0, xi - h / 6.0) * fx[static_cast<std::size_t>(i)] * fx[static_cast<std::size_t>(i)]);
            for (int j = 0; j < i; ++j)
                acc.add(h * h * K(xi, x[static_cast<std::size_t>(j)]) * fx[static_cast<std::size_t>(i)] * fx[static_cast<std::size_t>(j)]);
        }
        return acc.value();
    }
    // G'' = z^(-a); cell-pair integrals of (x-y)^(-a) by second differences of G
    auto G = [a](double z) { return z <= 0.0 ? 0.0 : std::pow(z, 2.0 - a) / ((1.0 - a) * (2.0 - a)); };
    std::vector<double> I(static_cast<std::size_t>(n));
    I[0] = G(h);
    for (int d = 1; d < n; ++d) I[static_cast<std::size_t>(d)] = G((d + 1) * h) - 2.0 * G(d * h) + G((d - 1) * h);
    auto smooth = [&](double xx, double yy) { return K(xx, yy) * std::pow(xx - yy, a); };
    for (int i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        acc.add(I[0] * smooth(xi + h / 6.0, xi - h / 6.0) * fx[static_cast<std::size_t>(i)] * fx[static_cast<std::size_t>(i)]);
        for (int j = 0; j < i; ++j)
            acc.add(I[static_cast<std::size_t>(i - j)] * smooth(xi, x[static_cast<std::size_t>(j)]) * fx[static_cast<std::size_t>(i)] *
                    fx[static_cast<std::size_t>(j)]);
    }
    return acc.value();
}

// Closed form of int_0^1 int_0^x K(x,y) f(x) f(y) dy dx for f = sum_m c_m t^m and the
// Caputo-type kernels (x-y)^(-a) times 1, x^a or (1-x)^(-a), through Beta integrals.
inline double polynomial_caputo_form(std::span<const double> coeffs, double alpha, kernels::KernelKind kind) {
    using K = kernels::KernelKind;
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("polynomial_caputo_form: alpha must lie in (0,1)");
    if (kind != K::CaputoPlain && kind != K::CaputoTimeWeight && kind != K::CaputoEndWeight)
        throw PreconditionError("polynomial_caputo_form: kernel must be caputo-plain, caputo-time or caputo-end");
    auto beta_fn = [](double p, double q) { return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q)); };
    double s = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        // inner: int_0^x (x-y)^(-a) y^m dy = x^(m+1-a) B(m+1, 1-a)
        const double inner = beta_fn(static_cast<double>(m) + 1.0, 1.0 - alpha);
        for (std::size_t p = 0; p < coeffs.size(); ++p) {
            const double e = static_cast<double>(p + m) + 1.0 - alpha;
            double outer = 0.0;
            if (kind == K::CaputoPlain) outer = 1.0 / (e + 1.0);
            else if (kind == K::CaputoTimeWeight) outer = 1.0 / (e + alpha + 1.0);
            else outer = beta_fn(e + 1.0, 1.0 - alpha);
            s += coeffs[m] * coeffs[p] * inner * outer;
        }
    }
    return s;
}

// w(t) = w0 + beta/Gamma(alpha) int_0^t (t-s)^(alpha-1) w(s) ds, product trapezoid
// (w piecewise linear, kernel integrated exactly), implicit in w_n.
inline std::vector<double> brute_volterra_solve(const solver::LinearModeProblem& p, double alpha, const solver::TimeMesh& mesh) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("brute_volterra_solve: alpha must lie in (0,1]");
    const auto& t = mesh.nodes();
    const std::size_t N = t.size() - 1;
    const double c = p.beta_coeff / std::tgamma(alpha);
    std::vector<double> w(N + 1, p.w0);
    for (std::size_t n = 1; n <= N; ++n) {
        double known = 0.0;
        double self = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double A = t[n] - t[j];
            const double B = t[n] - t[j + 1];
            const double tau = t[j + 1] - t[j];
            const double m0 = (std::pow(A, alpha) - std::pow(B, alpha)) / alpha;
            const double m1 = A * m0 - (std::pow(A, alpha + 1.0) - std::pow(B, alpha + 1.0)) / (alpha + 1.0);
            const double wr = m1 / tau;
            const double wl = m0 - wr;
            known += wl * w[j];
            if (j + 1 == n) self = wr;
            else known += wr * w[j + 1];
        }
        w[n] = (p.w0 + c * known) / (1.0 - c * self);
    }
    return w;
}

}  // namespace fraclab::reference
