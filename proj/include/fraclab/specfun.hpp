#pragma once

// Gamma and two-parameter Mittag-Leffler functions on the real line.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "errors.hpp"

namespace fraclab::specfun {

inline constexpr double pi = std::numbers::pi;

// sin(pi x) with exact zeros at the integers.
inline double sinpi(double x) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    double r = std::remainder(x, 2.0);
    double sign = 1.0;
    if (r < 0.0) {
        r = -r;
        sign = -1.0;
    }
    if (r > 0.5) r = 1.0 - r;
    return sign * std::sin(pi * r);
}

inline double cospi(double x) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    double a = std::fabs(std::remainder(x, 2.0));
    if (a <= 0.25) return std::cos(pi * a);
    if (a <= 0.75) return std::sin(pi * (0.5 - a));
    return -std::cos(pi * (1.0 - a));
}

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_series(double xm) {
    double a = lanczos_c[0];
    for (std::size_t i = 1; i < lanczos_c.size(); ++i) a += lanczos_c[i] / (xm + static_cast<double>(i));
    return a;
}

inline const std::array<double, 171>& factorials() {
    static const std::array<double, 171> table = [] {
        std::array<double, 171> f{};
        f[0] = 1.0;
        for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] * static_cast<double>(k);
        return f;
    }();
    return table;
}

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace detail

inline double gamma_fn(double x) {
    if (std::isnan(x)) return x;
    if (detail::is_nonpositive_integer(x)) throw PoleError("gamma_fn: pole at x = " + std::to_string(x));
    if (x == std::floor(x) && x <= 171.0) return detail::factorials()[static_cast<std::size_t>(x) - 1];
    if (x < 0.5) return pi / (sinpi(x) * gamma_fn(1.0 - x));
    if (x > 171.7) return std::numeric_limits<double>::infinity();
    const double xm = x - 1.0;
    const double t = xm + detail::lanczos_g + 0.5;
    const double half = std::pow(t, 0.5 * (xm + 0.5));
    return std::sqrt(2.0 * pi) * half * (half * std::exp(-t)) * detail::lanczos_series(xm);
}

// log|Gamma(x)|
inline double lgamma_abs(double x) {
    if (std::isnan(x)) return x;
    if (detail::is_nonpositive_integer(x)) throw PoleError("lgamma_abs: pole at x = " + std::to_string(x));
    if (x < 0.5) return std::log(pi) - std::log(std::fabs(sinpi(x))) - lgamma_abs(1.0 - x);
    if (x <= 20.0) return std::log(gamma_fn(x));
    const double xm = x - 1.0;
    const double t = xm + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (xm + 0.5) * std::log(t) - t + std::log(detail::lanczos_series(xm));
}

// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
    if (std::isnan(x)) return x;
    if (detail::is_nonpositive_integer(x)) return 0.0;
    if (x > 171.0) return std::exp(-lgamma_abs(x));
    if (x < -170.0) {
        const double s = sinpi(x);
        if (s == 0.0) return 0.0;
        const double mag = std::exp(std::log(std::fabs(s)) + lgamma_abs(1.0 - x) - std::log(pi));
        return s < 0.0 ? -mag : mag;
    }
    if (x < 0.5) return sinpi(x) * gamma_fn(1.0 - x) / pi;
    return 1.0 / gamma_fn(x);
}

struct MLParams {
    double alpha = 1.0;
    double beta = 1.0;
};

enum class MLRegime { Origin, ClosedForm, Taylor, Asymptotic, ExponentialAsymptotic, Integral };

inline const char* to_string(MLRegime r) {
    switch (r) {
        case MLRegime::Origin: return "origin";
        case MLRegime::ClosedForm: return "closed-form";
        case MLRegime::Taylor: return "taylor";
        case MLRegime::Asymptotic: return "asymptotic";
        case MLRegime::ExponentialAsymptotic: return "exponential-asymptotic";
        case MLRegime::Integral: return "integral";
    }
    return "?";
}

struct MLResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    MLRegime regime = MLRegime::Taylor;
    int terms = 0;
};

inline constexpr double ml_z_switch = 5.0;

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();
// relative accuracy a regime must certify before it is accepted
inline constexpr double ml_accept = 2e-13;

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct SeriesOutcome {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
    int terms = 0;
    bool converged = false;
};

inline double ml_term(double alpha, double beta, double z, int m, double log_abs_z) {
    if (m == 0) return rgamma(beta);
    const double x = alpha * m + beta;
    if (x < 170.0) {
        const double p = std::pow(z, m);
        if (std::isfinite(p) && p != 0.0 && std::fabs(p) < 1e300) return p * rgamma(x);
    }
    const double mag = std::exp(m * log_abs_z - lgamma_abs(x));
    return (z < 0.0 && (m % 2 == 1)) ? -mag : mag;
}

inline SeriesOutcome ml_taylor(double alpha, double beta, double z, int max_terms) {
    SeriesOutcome out;
    Neumaier acc;
    double abs_sum = 0.0;
    const double log_abs_z = std::log(std::fabs(z));
    for (int m = 0; m < max_terms; ++m) {
        const double t = ml_term(alpha, beta, z, m, log_abs_z);
        acc.add(t);
        abs_sum += std::fabs(t);
        out.terms = m + 1;
        const double x = alpha * m + beta;
        const double log_ratio = log_abs_z + lgamma_abs(x) - lgamma_abs(x + alpha);
        if (log_ratio < -1e-3) {
            // consecutive term ratios decrease from here on, so the tail is geometric
            const double rho = std::exp(log_ratio);
            const double tail = std::fabs(t) * rho / (1.0 - rho);
            if (tail <= 1e-3 * eps * abs_sum) {
                out.value = acc.value();
                out.error = 16.0 * eps * abs_sum + tail;
                out.converged = std::isfinite(out.value);
                return out;
            }
        }
    }
    out.value = acc.value();
    return out;
}

// log|1/Gamma(x)|, or for x<0 the log of the bound Gamma(1-x)/pi.
inline double log_rgamma_envelope(double x) {
    if (x > 0.0) return -lgamma_abs(x);
    return lgamma_abs(1.0 - x) - std::log(pi);
}

// -sum_{k>=1} z^{-k}/Gamma(beta - alpha k), optimally truncated.
inline SeriesOutcome ml_algebraic_asymptotic(double alpha, double beta, double z, int max_terms) {
    SeriesOutcome out;
    Neumaier acc;
    double abs_sum = 0.0;
    const double log_abs_z = std::log(std::fabs(z));
    double prev_env = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_terms; ++k) {
        const double x = beta - alpha * k;
        const double env = std::exp(-k * log_abs_z + log_rgamma_envelope(x));
        const double current = std::fabs(acc.value());
        if (env >= prev_env || (current > 0.0 && env <= 1e-2 * eps * current)) {
            out.value = acc.value();
            out.error = env + 4.0 * eps * abs_sum;
            out.terms = k - 1;
            out.converged = true;
            return out;
        }
        prev_env = env;
        double term = 0.0;
        const double s = (x > 0.0) ? 1.0 : sinpi(x);
        if (s != 0.0) {
            const double log_mag = -k * log_abs_z + (x > 0.0 ? -lgamma_abs(x)
                                                              : std::log(std::fabs(s)) + lgamma_abs(1.0 - x) - std::log(pi));
            double mag = std::exp(log_mag);
            double sign = (s < 0.0) ? -1.0 : 1.0;
            if (z < 0.0 && (k % 2 == 1)) sign = -sign;
            term = -sign * mag;
        }
        acc.add(term);
        abs_sum += std::fabs(term);
    }
    out.value = acc.value();
    return out;
}

// Real-line integral representation for z < 0, 0 < alpha < 1, 0 < beta <= alpha,
// written in u = chi^(1/alpha):
//   (1/pi) int_0^inf e^-u u^(alpha-beta) (u^alpha s1 + x s2) / (u^(2alpha) + 2 x c u^alpha + x^2) du
inline SeriesOutcome ml_integral_core(double alpha, double beta, double z) {
    using boost::math::quadrature::exp_sinh;
    using boost::math::quadrature::tanh_sinh;
    const double x = -z;
    const double s1 = sinpi(1.0 - beta);
    const double s2 = sinpi(1.0 - beta + alpha);
    const double half_gap = sinpi(0.5 * (1.0 - alpha));
    const double one_plus_c = 2.0 * half_gap * half_gap;  // 1 + cos(pi alpha)
    const double q = alpha - beta;
    auto integrand = [=](double u) {
        if (u <= 0.0) {
            if (q > 0.0) return 0.0;
            if (q == 0.0) return s2 / (pi * x);
            return std::numeric_limits<double>::infinity();
        }
        if (u > 800.0) return 0.0;
        const double ua = std::pow(u, alpha);
        const double num = ua * s1 + x * s2;
        const double d = ua - x;
        const double den = d * d + 2.0 * x * ua * one_plus_c;
        return std::exp(-u) * std::pow(u, q) * num / (pi * den);
    };

    thread_local tanh_sinh<double> ts(12);
    thread_local exp_sinh<double> es(12);
    constexpr double tol = 1e-14;
    double total = 0.0;
    double err_total = 0.0;
    double l1_total = 0.0;
    auto account = [&](double v, double err, double l1) {
        total += v;
        err_total += err;
        l1_total += l1;
    };

    // complex poles of the denominator sit at u = x^(1/alpha) exp(+-i theta)
    const double theta = pi * (1.0 - alpha) / alpha;
    const double radius = std::pow(x, 1.0 / alpha);
    double lo = -1.0;
    double centre = -1.0;
    double hi = -1.0;
    if (theta < 0.5 * pi) {
        centre = radius * std::cos(theta);
        const double width = radius * std::sin(theta);
        lo = centre - 4.0 * width;
        hi = centre + 4.0 * width;
    }
    if (centre > 0.0 && centre < 200.0 && lo > 0.0) {
        auto around_centre = [&](double t) { return integrand(centre + t); };
        double err = 0.0, l1 = 0.0;
        double v = ts.integrate(integrand, 0.0, lo, tol, &err, &l1);
        account(v, err, l1);
        v = ts.integrate(around_centre, lo - centre, 0.0, tol, &err, &l1);
        account(v, err, l1);
        v = ts.integrate(around_centre, 0.0, hi - centre, tol, &err, &l1);
        account(v, err, l1);
        v = es.integrate([&](double t) { return integrand(hi + t); }, tol, &err, &l1);
        account(v, err, l1);
    } else {
        double err = 0.0, l1 = 0.0;
        const double v = es.integrate(integrand, tol, &err, &l1);
        account(v, err, l1);
    }
    SeriesOutcome out;
    out.value = total;
    out.error = err_total + 8.0 * eps * l1_total;
    out.converged = std::isfinite(total);
    return out;
}

inline SeriesOutcome ml_integral(double alpha, double beta, double z) {
    int lifts = 0;
    double base = beta;
    while (base > alpha) {
        base -= alpha;
        ++lifts;
    }
    SeriesOutcome out = ml_integral_core(alpha, base, z);
    double gamma_param = base;
    for (int j = 0; j < lifts; ++j) {
        out.value = (out.value - rgamma(gamma_param)) / z;
        out.error = out.error / std::fabs(z) + 4.0 * eps * std::fabs(out.value);
        gamma_param += alpha;
    }
    return out;
}

inline bool accepted(const SeriesOutcome& s, double target) {
    return s.converged && std::isfinite(s.value) && s.error <= target * std::fabs(s.value);
}

}  // namespace detail

inline void validate(const MLParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 2.0)) throw DomainError("mittag_leffler: alpha must lie in (0, 2]");
    if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw DomainError("mittag_leffler: beta must be positive");
}

// Evaluates E_{alpha,beta}(z) and reports which regime produced it.
inline MLResult mittag_leffler_eval(const MLParams& p, double z) {
    validate(p);
    if (!std::isfinite(z) || std::fabs(z) > 1e12) throw DomainError("mittag_leffler: |z| must be finite and at most 1e12");
    const double a = p.alpha;
    const double b = p.beta;
    const double eps = detail::eps;
    if (z == 0.0) return {rgamma(b), 0.0, MLRegime::Origin, 1};

    auto wrap = [](const detail::SeriesOutcome& s, MLRegime r) {
        return MLResult{s.value, s.error, r, s.terms};
    };

    if (a == 1.0 && b == std::floor(b) && b <= 50.0) {
        if (b == 1.0) return {std::exp(z), eps * std::exp(z), MLRegime::ClosedForm, 0};
        if (std::fabs(z) > 1.0 || b == 2.0) {
            double v = std::expm1(z) / z;
            double ib = 2.0;
            while (ib < b && std::fabs(z) > ml_z_switch) {
                v = (v - rgamma(ib)) / z;
                ib += 1.0;
            }
            if (ib == b) return {v, 4.0 * eps * std::fabs(v) * b, MLRegime::ClosedForm, 0};
        }
    }

    const double w = std::pow(std::fabs(z), 1.0 / a);
    if (z > 0.0) {
        if (w <= 40.0) {
            auto s = detail::ml_taylor(a, b, z, 20000);
            if (detail::accepted(s, detail::ml_accept)) return wrap(s, MLRegime::Taylor);
        }
        if (a < 2.0 || w > 40.0) {
            if (w > 700.0) throw NonConvergenceError("mittag_leffler: result overflows double precision");
            const double lead = std::pow(z, (1.0 - b) / a) * std::exp(w) / a;
            auto alg = detail::ml_algebraic_asymptotic(a, b, z, 200);
            const double v = lead + alg.value;
            const double err = alg.error + 4.0 * eps * std::fabs(lead) + std::fabs(lead) * std::exp(-w);
            if (std::isfinite(v) && err <= detail::ml_accept * std::fabs(v))
                return {v, err, MLRegime::ExponentialAsymptotic, alg.terms + 1};
        }
        throw NonConvergenceError("mittag_leffler: no regime reached the tolerance for z > 0");
    }

    // z < 0
    if (std::fabs(z) <= ml_z_switch && w <= 30.0) {
        auto s = detail::ml_taylor(a, b, z, 20000);
        if (detail::accepted(s, detail::ml_accept)) return wrap(s, MLRegime::Taylor);
    }
    if (a < 1.0 || (a == 1.0 && -z > 40.0)) {
        auto s = detail::ml_algebraic_asymptotic(a, b, z, 500);
        if (detail::accepted(s, detail::ml_accept)) return wrap(s, MLRegime::Asymptotic);
    }
    if (a < 1.0) {
        auto s = detail::ml_integral(a, b, z);
        if (detail::accepted(s, 1e-11)) return wrap(s, MLRegime::Integral);
    }
    if (w <= 60.0) {
        // alpha > 1 oscillates; near a zero only max(|E|, 1/Gamma(beta)) is a usable scale
        auto s = detail::ml_taylor(a, b, z, 20000);
        if (s.converged && std::isfinite(s.value) && s.error <= 1e-11 * std::max(std::fabs(s.value), std::fabs(rgamma(b))))
            return wrap(s, MLRegime::Taylor);
    }
    throw NonConvergenceError("mittag_leffler: no regime reached the tolerance at z = " + std::to_string(z));
}

inline double mittag_leffler(const MLParams& p, double z) { return mittag_leffler_eval(p, z).value; }

inline double ml_recurrence_residual(const MLParams& p, double z) {
    return mittag_leffler(p, z) - z * mittag_leffler({p.alpha, p.alpha + p.beta}, z) - rgamma(p.beta);
}

}  // namespace fraclab::specfun
