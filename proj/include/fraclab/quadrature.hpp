#pragma once

// Gauss rules with a runtime node count.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "specfun.hpp"

namespace fraclab::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Legendre rule on [-1, 1] by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
    if (n < 1) throw PreconditionError("gauss_legendre: n must be positive");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

// Maps a rule on [-1,1] to [a,b].
inline Rule mapped(const Rule& base, double a, double b) {
    Rule r = base;
    const double h = 0.5 * (b - a);
    const double m = 0.5 * (a + b);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        r.nodes[i] = m + h * base.nodes[i];
        r.weights[i] = h * base.weights[i];
    }
    return r;
}

// Gauss-Jacobi rule on [0,1] for the weight t^a (1-t)^b, a, b > -1 (Golub-Welsch).
inline Rule gauss_jacobi01(int n, double a, double b) {
    if (n < 1) throw PreconditionError("gauss_jacobi01: n must be positive");
    if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi01: exponents must exceed -1");
    // Jacobi on [-1,1] with weight (1-x)^b (1+x)^a, then x = 2t - 1
    const double al = b;
    const double be = a;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(n > 1 ? n - 1 : 1);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + al + be;
        if (k == 0) {
            diag(k) = (be - al) / (al + be + 2.0);
        } else {
            diag(k) = (be * be - al * al) / (s * (s + 2.0));
        }
        if (k + 1 < n) {
            const double k1 = k + 1.0;
            const double s1 = 2.0 * k1 + al + be;
            if (k == 0) {
                off(k) = std::sqrt(4.0 * (1.0 + al) * (1.0 + be) / (s1 * s1 * (s1 + 1.0)));
            } else {
                off(k) = std::sqrt(4.0 * k1 * (k1 + al) * (k1 + be) * (k1 + al + be) /
                                   (s1 * s1 * (s1 + 1.0) * (s1 - 1.0)));
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    if (n == 1) {
        Eigen::MatrixXd m(1, 1);
        m(0, 0) = diag(0);
        solver.compute(m);
    } else {
        solver.computeFromTridiagonal(diag, off.head(n - 1));
    }
    const double mu0 = std::exp(specfun::lgamma_abs(a + 1.0) + specfun::lgamma_abs(b + 1.0) - specfun::lgamma_abs(a + b + 2.0));
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        r.nodes[i] = 0.5 * (x + 1.0);
        r.weights[i] = mu0 * v0 * v0;
    }
    return r;
}

}  // namespace fraclab::quadrature
