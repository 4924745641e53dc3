#pragma once

// Kernel catalog, positivity checks and the identities behind them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace fraclab::kernels {

inline constexpr double tol_admiss = 1e-9;

struct WeightFn {
    std::function<double(double)> eval;
    bool integrable = true;
    std::string label;
    // Quadrature hints: omega behaves like theta^a near 0 and (1-theta)^b near 1.
    double exponent_at_zero = 0.0;
    double exponent_at_one = 0.0;

    double operator()(double theta) const { return eval(theta); }

    // theta^(alpha-1) (1-theta)^(-alpha)
    static WeightFn caputo(double alpha) {
        WeightFn w;
        w.eval = [alpha](double t) { return std::pow(t, alpha - 1.0) * std::pow(1.0 - t, -alpha); };
        w.integrable = true;
        w.label = "theta^(alpha-1)*(1-theta)^(-alpha)";
        w.exponent_at_zero = alpha - 1.0;
        w.exponent_at_one = -alpha;
        return w;
    }
};

enum class KernelKind {
    CaputoPlain,
    CaputoTimeWeight,
    CaputoEndWeight,
    OmegaWeighted,
    RatioTauOverS,
    ExpAbsDiff,
    BrownianBridge,
    Custom
};

inline const char* to_string(KernelKind k) {
    switch (k) {
        case KernelKind::CaputoPlain: return "caputo-plain";
        case KernelKind::CaputoTimeWeight: return "caputo-time";
        case KernelKind::CaputoEndWeight: return "caputo-end";
        case KernelKind::OmegaWeighted: return "omega";
        case KernelKind::RatioTauOverS: return "ratio";
        case KernelKind::ExpAbsDiff: return "exp-abs";
        case KernelKind::BrownianBridge: return "bridge";
        case KernelKind::Custom: return "custom";
    }
    return "?";
}

inline std::optional<KernelKind> kind_from_string(const std::string& s) {
    for (auto k : {KernelKind::CaputoPlain, KernelKind::CaputoTimeWeight, KernelKind::CaputoEndWeight,
                   KernelKind::OmegaWeighted, KernelKind::RatioTauOverS, KernelKind::ExpAbsDiff,
                   KernelKind::BrownianBridge, KernelKind::Custom})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

struct KernelSpec {
    KernelKind kind = KernelKind::CaputoPlain;
    double alpha = 0.5;
    WeightFn omega;
    // called as custom_eval(max(x,y), min(x,y))
    std::function<double(double, double)> custom_eval;
    bool custom_singular = false;
    // epsilon in (x - y + epsilon * r(x,y))^(-alpha) for the Caputo-type kinds
    double regularization = 0.0;

    static KernelSpec make(KernelKind kind, double alpha = 0.5) {
        KernelSpec s;
        s.kind = kind;
        s.alpha = alpha;
        if (kind == KernelKind::OmegaWeighted) s.omega = WeightFn::caputo(alpha);
        return s;
    }
    static KernelSpec custom(std::function<double(double, double)> f, bool singular = false) {
        KernelSpec s;
        s.kind = KernelKind::Custom;
        s.custom_eval = std::move(f);
        s.custom_singular = singular;
        return s;
    }
    KernelSpec regularized(double eps) const {
        KernelSpec s = *this;
        s.regularization = eps;
        return s;
    }
};

inline bool is_caputo_type(KernelKind k) {
    return k == KernelKind::CaputoPlain || k == KernelKind::CaputoTimeWeight || k == KernelKind::CaputoEndWeight ||
           k == KernelKind::OmegaWeighted;
}

// True when the kernel has no finite diagonal value.
inline bool is_singular(const KernelSpec& s) {
    if (s.kind == KernelKind::Custom) return s.custom_singular;
    return is_caputo_type(s.kind) && s.regularization <= 0.0;
}

namespace detail {

inline void check_alpha(const KernelSpec& s) {
    if (is_caputo_type(s.kind) && !(s.alpha > 0.0 && s.alpha < 1.0))
        throw DomainError("kernel: alpha must lie in (0,1)");
}

// Formula at hi >= lo; no domain checks.
inline double formula(const KernelSpec& s, double hi, double lo) {
    const double a = s.alpha;
    const double e = s.regularization;
    switch (s.kind) {
        case KernelKind::CaputoPlain: return std::pow(hi - lo + e, -a);
        case KernelKind::CaputoTimeWeight: return std::pow(hi, a) * std::pow(hi - lo + e * hi, -a);
        case KernelKind::CaputoEndWeight:
            return std::pow(1.0 - hi, -a) * std::pow(hi - lo + e * (1.0 - lo), -a);
        case KernelKind::OmegaWeighted:
            if (!s.omega.eval) throw PreconditionError("kernel: OmegaWeighted needs a weight");
            return s.omega(hi) * hi * std::pow(hi - lo + e * hi * (1.0 - lo), -a);
        case KernelKind::RatioTauOverS: return lo / hi;
        case KernelKind::ExpAbsDiff: return std::exp(-(hi - lo));
        case KernelKind::BrownianBridge: return lo - hi * lo;
        case KernelKind::Custom:
            if (!s.custom_eval) throw PreconditionError("kernel: Custom kind needs custom_eval");
            return s.custom_eval(hi, lo);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline double kernel_eval(const KernelSpec& spec, double x, double y) {
    detail::check_alpha(spec);
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) throw DomainError("kernel_eval: point outside the open unit square");
    if (x == y) throw DomainError("kernel_eval: diagonal is excluded");
    return detail::formula(spec, std::max(x, y), std::min(x, y));
}

// Limit value K(t,t) for kernels that have one.
inline double kernel_diagonal(const KernelSpec& spec, double t) {
    detail::check_alpha(spec);
    if (is_singular(spec)) throw DomainError("kernel_diagonal: singular kernel has no diagonal value");
    if (!(t > 0.0 && t < 1.0)) throw DomainError("kernel_diagonal: point outside (0,1)");
    return detail::formula(spec, t, t);
}

// Off-diagonal entries K(t_i,t_j); the diagonal holds the limit value for bounded
// kernels and 0 for singular ones.
inline Eigen::MatrixXd gram_matrix(const KernelSpec& spec, std::span<const double> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    std::vector<double> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("gram_matrix: duplicate points");
    const bool singular = is_singular(spec);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = singular ? 0.0 : kernel_diagonal(spec, points[i]);
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = kernel_eval(spec, points[i], points[j]);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

struct PsdResult {
    double min_eigenvalue = 0.0;
    double spectral_radius = 0.0;
    bool passed = false;
};

inline PsdResult psd_check(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) throw PreconditionError("psd_check: matrix is not square");
    if (m.size() == 0) return {0.0, 0.0, true};
    const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw PreconditionError("psd_check: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    PsdResult r;
    r.min_eigenvalue = ev.minCoeff();
    r.spectral_radius = ev.cwiseAbs().maxCoeff();
    r.passed = r.min_eigenvalue >= -tol * std::max(1.0, r.spectral_radius);
    return r;
}

// PSD test of a catalog kernel at distinct points. Bounded kernels are tested with
// their limit diagonal; singular kernels through the epsilon-regularized family, each
// member of which is positive semi-definite and converges off the diagonal.
struct KernelPsdResult {
    PsdResult worst;
    std::vector<double> regularizations;
    bool passed = true;
};

inline KernelPsdResult kernel_psd_check(const KernelSpec& spec, std::span<const double> points, double tol,
                                        std::vector<double> regularizations = {1e-2, 1e-3, 1e-4}) {
    KernelPsdResult out;
    if (!is_singular(spec)) {
        out.worst = psd_check(gram_matrix(spec, points), tol);
        out.passed = out.worst.passed;
        return out;
    }
    if (spec.kind == KernelKind::Custom) throw PreconditionError("kernel_psd_check: singular custom kernels need a diagonal");
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (double e : regularizations) {
        const auto r = psd_check(gram_matrix(spec.regularized(e), points), tol);
        const double ratio = r.min_eigenvalue / std::max(1.0, r.spectral_radius);
        if (ratio < worst_ratio) {
            worst_ratio = ratio;
            out.worst = r;
        }
        out.passed = out.passed && r.passed;
    }
    out.regularizations = std::move(regularizations);
    return out;
}

// Sum over i != j of K(t_i,t_j) c_i c_j.
inline double off_diagonal_form(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        for (Eigen::Index j = 0; j < gram.cols(); ++j)
            if (i != j) s += gram(i, j) * c(i) * c(j);
    return s;
}

struct AdmissibilityReport {
    int grid_n = 0;
    double delta = 0.0;
    double min_margin_dx = 0.0;
    double min_margin_dy = 0.0;
    double min_margin_dxy = 0.0;
    bool passed = false;
    std::string psi_label;
    std::size_t probes = 0;
};

using TwoVar = std::function<double(double, double)>;

// Sign conditions of K~ = K psi psi on the lower triangle, by central differences.
// k(x, y) is called with x > y.
inline AdmissibilityReport admissibility_check(const TwoVar& k, const std::function<double(double)>& psi, int grid_n,
                                               double delta, std::string psi_label = "psi") {
    if (grid_n < 8) throw PreconditionError("admissibility_check: grid_n must be at least 8");
    if (!(delta > 0.0 && delta < 1.0 / grid_n)) throw PreconditionError("admissibility_check: need 0 < delta < 1/grid_n");
    const double h = delta / 4.0;
    auto kt = [&](double x, double y) {
        const double v = k(x, y) * psi(x) * psi(y);
        if (!std::isfinite(v)) throw EvaluationError("admissibility_check: non-finite value at a probe point");
        return v;
    };
    AdmissibilityReport rep;
    rep.grid_n = grid_n;
    rep.delta = delta;
    rep.psi_label = std::move(psi_label);
    rep.min_margin_dx = rep.min_margin_dy = rep.min_margin_dxy = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_n; ++i) {
        const double x = static_cast<double>(i) / grid_n;
        if (x > 1.0 - delta || x < 2.0 * delta) continue;
        for (int j = 0; j <= grid_n; ++j) {
            const double y = static_cast<double>(j) / grid_n;
            if (y < delta || y > x - delta) continue;
            const double dx = (kt(x + h, y) - kt(x - h, y)) / (2.0 * h);
            const double dy = (kt(x, y + h) - kt(x, y - h)) / (2.0 * h);
            const double dxy = (kt(x + h, y + h) - kt(x + h, y - h) - kt(x - h, y + h) + kt(x - h, y - h)) / (4.0 * h * h);
            rep.min_margin_dx = std::min(rep.min_margin_dx, -dx);
            rep.min_margin_dy = std::min(rep.min_margin_dy, dy);
            rep.min_margin_dxy = std::min(rep.min_margin_dxy, -dxy);
            ++rep.probes;
        }
    }
    rep.passed = rep.probes > 0 && rep.min_margin_dx >= -tol_admiss && rep.min_margin_dy >= -tol_admiss &&
                 rep.min_margin_dxy >= -tol_admiss;
    return rep;
}

inline AdmissibilityReport admissibility_check(const KernelSpec& spec, const std::function<double(double)>& psi,
                                               int grid_n, double delta, std::string psi_label = "psi") {
    detail::check_alpha(spec);
    return admissibility_check([&spec](double x, double y) { return detail::formula(spec, x, y); }, psi, grid_n, delta,
                               std::move(psi_label));
}

struct QuadFormResult {
    double value = 0.0;
    double refined_value = 0.0;
    double relative_change = 0.0;
    bool warning = false;
};

namespace detail {

// Piecewise-linear interpolant of samples on the uniform grid i/(n-1).
struct PiecewiseLinear {
    std::span<const double> f;
    double operator()(double t) const {
        const std::size_t n = f.size();
        const double pos = t * static_cast<double>(n - 1);
        std::size_t j = static_cast<std::size_t>(std::floor(pos));
        if (j >= n - 1) j = n - 2;
        const double w = pos - static_cast<double>(j);
        return (1.0 - w) * f[j] + w * f[j + 1];
    }
};

// int_0^t (t-s)^(-alpha) f(s) ds, exact for piecewise-linear f.
inline double singular_inner(std::span<const double> f, double alpha, double t) {
    const std::size_t n = f.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    const double p1 = 1.0 - alpha;
    const double p2 = 2.0 - alpha;
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double a = static_cast<double>(j) * h;
        if (a >= t) break;
        const double b = std::min(static_cast<double>(j + 1) * h, t);
        const double slope = (f[j + 1] - f[j]) / h;
        const double lo = t - b;
        const double hi = t - a;
        // f(s) = f_j + slope (s - a) = (f_j + slope (t - a)) - slope u with u = t - s
        const double c0 = f[j] + slope * (t - a);
        const double m0 = (std::pow(hi, p1) - std::pow(lo, p1)) / p1;
        const double m1 = (std::pow(hi, p2) - std::pow(lo, p2)) / p2;
        sum += c0 * m0 - slope * m1;
    }
    return sum;
}

inline double corollary_form(const KernelSpec& spec, std::span<const double> f, int n_outer) {
    const double a = spec.alpha;
    PiecewiseLinear fl{f};
    const bool end_weighted = spec.kind == KernelKind::CaputoEndWeight || spec.kind == KernelKind::OmegaWeighted;
    std::vector<double> g(static_cast<std::size_t>(n_outer) + 1);
    for (int i = 0; i <= n_outer; ++i) {
        const double u = static_cast<double>(i) / n_outer;
        double val = 0.0;
        if (!end_weighted) {
            const double t = u * u;
            if (t > 0.0) {
                const double weight = spec.kind == KernelKind::CaputoTimeWeight ? std::pow(t, a) : 1.0;
                val = fl(t) * weight * singular_inner(f, a, t) * 2.0 * u;
            }
        } else {
            // u = (1-t)^(1-alpha): dt = u^(alpha/(1-alpha)) du / (1-alpha) absorbs (1-t)^(-alpha)
            const double t = 1.0 - std::pow(u, 1.0 / (1.0 - a));
            if (t > 0.0 && u > 0.0) {
                double weight = 1.0;  // (1-t)^(-alpha) times the Jacobian factor
                if (spec.kind == KernelKind::OmegaWeighted) weight = spec.omega(t) * t * std::pow(1.0 - t, a);
                val = fl(t) * weight * singular_inner(f, a, t) / (1.0 - a);
            } else if (u == 0.0 && spec.kind == KernelKind::CaputoEndWeight) {
                val = fl(1.0) * singular_inner(f, a, 1.0) / (1.0 - a);
            }
        }
        g[static_cast<std::size_t>(i)] = val;
    }
    if (end_weighted && spec.kind == KernelKind::OmegaWeighted && n_outer >= 2) g[0] = 2.0 * g[1] - g[2];
    double s = 0.5 * (g.front() + g.back());
    for (int i = 1; i < n_outer; ++i) s += g[static_cast<std::size_t>(i)];
    return s / n_outer;
}

}  // namespace detail

// int_0^1 int_0^t f(s) f(t) (t-s)^(-alpha) w(t) ds dt for the Caputo-type kinds, f
// given at n_quad + 1 uniform nodes on [0,1].
inline QuadFormResult singular_quadratic_form(const KernelSpec& spec, std::span<const double> f, int n_quad) {
    detail::check_alpha(spec);
    if (!is_caputo_type(spec.kind)) throw PreconditionError("singular_quadratic_form: kernel must be a Caputo-type kind");
    if (n_quad < 2 || f.size() != static_cast<std::size_t>(n_quad) + 1)
        throw PreconditionError("singular_quadratic_form: need n_quad + 1 samples");
    if (spec.kind == KernelKind::OmegaWeighted && !spec.omega.eval) throw PreconditionError("singular_quadratic_form: missing weight");
    QuadFormResult r;
    r.value = detail::corollary_form(spec, f, n_quad);
    r.refined_value = detail::corollary_form(spec, f, 2 * n_quad);
    const double denom = std::max(std::fabs(r.refined_value), 1e-14);
    r.relative_change = std::fabs(r.refined_value - r.value) / denom;
    r.warning = r.relative_change > 1e-4;
    return r;
}

struct SmoothKernel {
    TwoVar eval;
    TwoVar dx;
    TwoVar dy;
    TwoVar dxy;
};

struct IbpResult {
    double boundary_term = 0.0;
    double edge_x_term = 0.0;
    double bulk_term = 0.0;
    double edge_y_term = 0.0;
    double total = 0.0;
    double direct = 0.0;
    double relative_gap = 0.0;
};

namespace detail {

inline double fd_first(const TwoVar& k, double x, double y, bool in_x) {
    auto d = [&](double h) {
        return in_x ? (k(x + h, y) - k(x - h, y)) / (2.0 * h) : (k(x, y + h) - k(x, y - h)) / (2.0 * h);
    };
    const double h = 1e-3;
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

inline double fd_mixed(const TwoVar& k, double x, double y) {
    auto d = [&](double h) { return (k(x + h, y + h) - k(x + h, y - h) - k(x - h, y + h) + k(x - h, y - h)) / (4.0 * h * h); };
    const double h = 1e-2;
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace detail

// Four-term decomposition of int int_{y<x} K(x,y) phi(x) phi(y) with v = int_0^x phi.
// phi must vanish outside [lo, hi]; missing derivatives of K are taken by finite
// differences, which evaluate K slightly outside the closed triangle.
inline IbpResult ibp_decomposition(const SmoothKernel& kernel, const std::function<double(double)>& phi, int n,
                                   double lo = 0.0, double hi = 1.0) {
    if (n < 4) throw PreconditionError("ibp_decomposition: n must be at least 4");
    if (!(0.0 <= lo && lo < hi && hi <= 1.0)) throw PreconditionError("ibp_decomposition: bad support");
    const TwoVar& k = kernel.eval;
    auto kx = [&](double x, double y) { return kernel.dx ? kernel.dx(x, y) : detail::fd_first(k, x, y, true); };
    auto ky = [&](double x, double y) { return kernel.dy ? kernel.dy(x, y) : detail::fd_first(k, x, y, false); };
    auto kxy = [&](double x, double y) { return kernel.dxy ? kernel.dxy(x, y) : detail::fd_mixed(k, x, y); };

    const auto base = quadrature::gauss_legendre(n);
    const auto vbase = quadrature::gauss_legendre(48);
    auto v = [&](double x) {
        if (x <= lo) return 0.0;
        const double b = std::min(x, hi);
        const auto r = quadrature::mapped(vbase, lo, b);
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * phi(r.nodes[i]);
        return s;
    };
    const double v1 = v(hi);
    auto integrate1 = [&](double a, double b, auto&& g) {
        if (b <= a) return 0.0;
        const auto r = quadrature::mapped(base, a, b);
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * g(r.nodes[i]);
        return s;
    };

    IbpResult out;
    out.boundary_term = 0.5 * k(1.0, 0.0) * v1 * v1;
    auto ex = [&](double x) {
        const double vx = v(x);
        return vx * vx * (-kx(x, 0.0));
    };
    out.edge_x_term = 0.5 * (integrate1(lo, hi, ex) + integrate1(hi, 1.0, ex));
    auto ey = [&](double y) {
        const double d = v1 - v(y);
        return ky(1.0, y) * d * d;
    };
    out.edge_y_term = 0.5 * (integrate1(0.0, lo, ey) + integrate1(lo, hi, ey));

    // bulk: x in [lo,1], y in [0, min(x,hi)], split so every piece is smooth
    auto bulk_piece = [&](double xa, double xb, auto&& y_range) {
        return integrate1(xa, xb, [&](double x) {
            const double vx = v(x);
            const auto [ya, yb] = y_range(x);
            return integrate1(ya, yb, [&](double y) {
                const double d = vx - v(y);
                return -kxy(x, y) * d * d;
            });
        });
    };
    double bulk = 0.0;
    bulk += bulk_piece(lo, hi, [&](double) { return std::pair{0.0, lo}; });
    bulk += bulk_piece(lo, hi, [&](double x) { return std::pair{lo, x}; });
    bulk += bulk_piece(hi, 1.0, [&](double) { return std::pair{0.0, lo}; });
    bulk += bulk_piece(hi, 1.0, [&](double) { return std::pair{lo, hi}; });
    out.bulk_term = 0.5 * bulk;
    out.total = out.boundary_term + out.edge_x_term + out.bulk_term + out.edge_y_term;

    out.direct = integrate1(lo, hi, [&](double x) {
        const double px = phi(x);
        return integrate1(lo, x, [&](double y) { return k(x, y) * px * phi(y); });
    });
    const double mass = integrate1(lo, hi, [&](double x) {
        const double px = std::fabs(phi(x));
        return integrate1(lo, x, [&](double y) { return std::fabs(k(x, y)) * px * std::fabs(phi(y)); });
    });
    const double denom = std::max({std::fabs(out.direct), 1e-8 * mass, 1e-300});
    out.relative_gap = std::fabs(out.total - out.direct) / denom;
    if (n >= 256 && out.relative_gap > 1e-5)
        throw ConsistencyError("ibp_decomposition: four-term total disagrees with direct quadrature");
    return out;
}

// omega(theta) theta^(1-alpha) (1-theta)^alpha non-increasing at n interior probes.
inline bool omega_condition_check(const WeightFn& omega, double alpha, int n) {
    if (n < 16) throw PreconditionError("omega_condition_check: need at least 16 probes");
    double prev = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / (n + 1);
        const double p = omega(t) * std::pow(t, 1.0 - alpha) * std::pow(1.0 - t, alpha);
        if (i > 1 && p > prev + 1e-10 * std::max(std::fabs(p), std::fabs(prev))) return false;
        prev = p;
    }
    return true;
}

inline double bridge_sine_series(double s, double t, int n_terms) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) throw DomainError("bridge_sine_series: arguments must lie in [0,1]");
    double sum = 0.0;
    const double pi2 = specfun::pi * specfun::pi;
    for (int k = n_terms; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        sum += 2.0 / (kk * kk * pi2) * specfun::sinpi(kk * s) * specfun::sinpi(kk * t);
    }
    return sum;
}

struct PolyaResult {
    std::vector<double> values;
    double min_transform_value = 0.0;
    bool passed = false;
};

// int_0^inf f(x) cos(xi x) dx, integrated half-period by half-period.
inline double cosine_transform(const std::function<double(double)>& f, double xi, int max_segments = 200000) {
    using boost::math::quadrature::gauss_kronrod;
    if (xi == 0.0) throw PreconditionError("polya_transform_check: xi must be nonzero");
    const double w = std::fabs(xi);
    const double half = specfun::pi / w;
    double sum = 0.0;
    // first segment ends at the first zero of cos(xi x)
    double a = 0.0;
    double b = 0.5 * half;
    for (int seg = 0; seg < max_segments; ++seg) {
        double err = 0.0;
        sum += gauss_kronrod<double, 31>::integrate([&](double x) { return f(x) * std::cos(w * x); }, a, b, 15, 1e-14, &err);
        const double tail = 2.0 * std::fabs(f(b)) / w;
        if (tail < 1e-13) return sum;
        a = b;
        b += half;
    }
    const double tail = 2.0 * std::fabs(f(a)) / w;
    if (tail > 1e-9) throw NonConvergenceError("polya_transform_check: tail estimate above 1e-9");
    return sum;
}

inline PolyaResult polya_transform_check(const std::function<double(double)>& f, std::span<const double> xi_samples) {
    PolyaResult r;
    r.min_transform_value = std::numeric_limits<double>::infinity();
    for (double xi : xi_samples) {
        const double v = cosine_transform(f, xi);
        r.values.push_back(v);
        r.min_transform_value = std::min(r.min_transform_value, v);
    }
    r.passed = r.min_transform_value >= -1e-8;
    return r;
}

struct RatioIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

// Both sides of int int_{tau<s} (tau/s) u(tau) u(s) = W(1)^2/2 + int_0^1 W(s)^2 / s^3 ds,
// W(s) = int_0^s tau u(tau) dtau, for u sampled at the n nodes i/(n-1).
inline RatioIdentity ratio_kernel_identity_residual(std::span<const double> u) {
    const std::size_t n = u.size();
    if (n < 3) throw PreconditionError("ratio_kernel_identity_residual: need at least 3 samples");
    const double h = 1.0 / static_cast<double>(n - 1);
    auto t = [&](std::size_t i) { return static_cast<double>(i) * h; };
    RatioIdentity r;
    // trapezoid on the triangle: outer over s, inner over tau in [0, s]
    double lhs = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double s = t(i);
        double inner = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            const double wj = (j == 0 || j == i) ? 0.5 : 1.0;
            inner += wj * (t(j) / s) * u[j];
        }
        inner *= h;
        const double wi = (i == n - 1) ? 0.5 : 1.0;
        lhs += wi * u[i] * inner;
    }
    r.lhs = lhs * h;
    // W by cumulative trapezoid, then the outer integral
    std::vector<double> wcum(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) wcum[i] = wcum[i - 1] + 0.5 * h * (t(i - 1) * u[i - 1] + t(i) * u[i]);
    double rhs = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double s = t(i);
        const double wi = (i == n - 1) ? 0.5 : 1.0;
        rhs += wi * wcum[i] * wcum[i] / (s * s * s);
    }
    r.rhs = rhs * h + 0.5 * wcum[n - 1] * wcum[n - 1];
    r.residual = std::fabs(r.lhs - r.rhs);
    return r;
}

}  // namespace fraclab::kernels
