#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "fraclab/quadrature.hpp"

using namespace fraclab::quadrature;

TEST(GaussLegendre, PolynomialExactness) {
    const auto r = gauss_legendre(10);
    double sum_w = 0.0;
    for (double w : r.weights) sum_w += w;
    EXPECT_NEAR(sum_w, 2.0, 1e-14);
    for (int p = 0; p <= 19; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
        const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
        EXPECT_NEAR(s, exact, 1e-14) << p;
    }
}

TEST(GaussLegendre, Mapped) {
    const auto r = mapped(gauss_legendre(20), 0.0, std::acos(-1.0));
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::sin(r.nodes[i]);
    EXPECT_NEAR(s, 2.0, 1e-14);
}

// x^a (1-x)^b weight on [0,1]; compare with tanh-sinh on the full integrand
TEST(GaussJacobi, MatchesTanhSinh) {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (auto [a, b] : {std::pair{-0.5, 0.0}, {-0.3, -0.7}, {0.0, -0.5}, {0.4, 0.2}}) {
        const auto r = gauss_jacobi01(24, a, b);
        auto g = [](double x) { return std::cos(3.0 * x) + x * x; };
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * g(r.nodes[i]);
        // split at 1/2 and reflect so each piece is singular only at its left end
        const double left = ts.integrate([&](double x) { return std::pow(x, a) * std::pow(1.0 - x, b) * g(x); }, 0.0, 0.5);
        const double right = ts.integrate([&](double u) { return std::pow(1.0 - u, a) * std::pow(u, b) * g(1.0 - u); }, 0.0, 0.5);
        const double ref = left + right;
        EXPECT_NEAR(s, ref, 1e-10 * std::fabs(ref)) << a << ' ' << b;
    }
}
