#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "fraclab/kernels.hpp"
#include "fraclab/rng.hpp"

using namespace fraclab;
using namespace fraclab::kernels;

namespace {

double bump(double x, double c, double w) {
    const double u = (x - c) / w;
    return std::fabs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
}

}  // namespace

TEST(KernelEval, ClosedForms) {
    EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::make(KernelKind::BrownianBridge), 0.25, 0.5), 0.125);
    EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::make(KernelKind::RatioTauOverS), 0.5, 0.25), 0.5);
    EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::make(KernelKind::CaputoPlain, 0.5), 0.75, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(kernel_eval(KernelSpec::make(KernelKind::ExpAbsDiff), 0.3, 0.7), std::exp(-0.4));
}

TEST(KernelEval, Symmetric) {
    SplitMix64 rng(3);
    for (auto kind : {KernelKind::CaputoPlain, KernelKind::CaputoTimeWeight, KernelKind::CaputoEndWeight, KernelKind::OmegaWeighted,
                      KernelKind::RatioTauOverS, KernelKind::ExpAbsDiff, KernelKind::BrownianBridge}) {
        const auto spec = KernelSpec::make(kind, 0.4);
        for (int i = 0; i < 20; ++i) {
            const double x = rng.uniform(0.05, 0.95);
            const double y = rng.uniform(0.05, 0.95);
            if (std::fabs(x - y) < 1e-3) continue;
            EXPECT_DOUBLE_EQ(kernel_eval(spec, x, y), kernel_eval(spec, y, x));
        }
    }
}

TEST(Gram, Examples) {
    const std::vector<double> p = {0.25, 0.5, 0.75};
    const auto g = gram_matrix(KernelSpec::make(KernelKind::BrownianBridge), p);
    const double expect[3][3] = {{0.1875, 0.125, 0.0625}, {0.125, 0.25, 0.125}, {0.0625, 0.125, 0.1875}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(g(i, j), expect[i][j]);

    const std::vector<double> one = {0.3};
    EXPECT_DOUBLE_EQ(gram_matrix(KernelSpec::make(KernelKind::ExpAbsDiff), one)(0, 0), 1.0);

    const std::vector<double> q = {0.2, 0.4, 0.8};
    const auto r = gram_matrix(KernelSpec::make(KernelKind::RatioTauOverS), q);
    EXPECT_DOUBLE_EQ(r(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(r(0, 2), 0.25);
    EXPECT_DOUBLE_EQ(r(1, 2), 0.5);
    for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(r(i, i), 1.0);
}

TEST(Psd, Examples) {
    Eigen::Matrix2d a;
    a << 2, 0, 0, 3;
    auto r = psd_check(a, 1e-10);
    EXPECT_NEAR(r.min_eigenvalue, 2.0, 1e-14);
    EXPECT_TRUE(r.passed);
    Eigen::Matrix2d b;
    b << 0, 1, 1, 0;
    r = psd_check(b, 1e-10);
    EXPECT_NEAR(r.min_eigenvalue, -1.0, 1e-14);
    EXPECT_FALSE(r.passed);
    const std::vector<double> p = {0.25, 0.5, 0.75};
    r = psd_check(gram_matrix(KernelSpec::make(KernelKind::BrownianBridge), p), 1e-10);
    EXPECT_GT(r.min_eigenvalue, 0.0);
    EXPECT_TRUE(r.passed);
}

TEST(Psd, NonSymmetricRejected) {
    Eigen::Matrix2d m;
    m << 1, 2, 0, 1;
    EXPECT_THROW(psd_check(m, 1e-10), PreconditionError);
}

TEST(Psd, CatalogRandomSets) {
    SplitMix64 rng(99);
    for (auto kind : {KernelKind::CaputoPlain, KernelKind::CaputoTimeWeight, KernelKind::CaputoEndWeight, KernelKind::OmegaWeighted,
                      KernelKind::RatioTauOverS, KernelKind::ExpAbsDiff, KernelKind::BrownianBridge}) {
        for (double a : {0.25, 0.5, 0.75}) {
            for (int s = 0; s < 20; ++s) {
                std::vector<double> pts;
                while (pts.size() < 8) {
                    const double x = rng.uniform(0.05, 0.95);
                    bool ok = true;
                    for (double q : pts) ok = ok && std::fabs(q - x) > 1e-3;
                    if (ok) pts.push_back(x);
                }
                EXPECT_TRUE(kernel_psd_check(KernelSpec::make(kind, a), pts, 1e-8).passed) << to_string(kind) << ' ' << a;
            }
        }
    }
}

// Two points, c = (1, -1): the off-diagonal sum is -2K < 0 although the kernel is positive.
TEST(OffDiagonal, TwoPointCounterexample) {
    const std::vector<double> p = {0.3, 0.6};
    const auto g = gram_matrix(KernelSpec::make(KernelKind::ExpAbsDiff), p);
    Eigen::Vector2d c(1.0, -1.0);
    EXPECT_NEAR(off_diagonal_form(g, c), -2.0 * std::exp(-0.3), 1e-15);
    EXPECT_GE(c.dot(g * c), 0.0);
}

TEST(Admissibility, Examples) {
    const auto reg = KernelSpec::make(KernelKind::CaputoPlain, 0.5).regularized(0.01);
    EXPECT_TRUE(admissibility_check(reg, [](double) { return 1.0; }, 32, 0.01).passed);

    const auto xy = KernelSpec::custom([](double x, double y) { return x * y; });
    const auto r = admissibility_check(xy, [](double) { return 1.0; }, 16, 0.02);
    EXPECT_FALSE(r.passed);
    EXPECT_LT(r.min_margin_dx, 0.0);

    const double a = 0.5;
    const auto om = KernelSpec::make(KernelKind::OmegaWeighted, a).regularized(0.01);
    EXPECT_TRUE(admissibility_check(om, [a](double x) { return std::pow(1.0 - x, a); }, 32, 0.01).passed);
}

TEST(Admissibility, BadGridRejected) {
    const auto s = KernelSpec::make(KernelKind::CaputoPlain, 0.5).regularized(0.01);
    EXPECT_THROW(admissibility_check(s, [](double) { return 1.0; }, 4, 0.01), PreconditionError);
    EXPECT_THROW(admissibility_check(s, [](double) { return 1.0; }, 32, 0.5), PreconditionError);
}

TEST(SingularForm, Examples) {
    const auto spec = KernelSpec::make(KernelKind::CaputoPlain, 0.5);
    const int n = 256;
    std::vector<double> zero(n + 1, 0.0), one(n + 1, 1.0), s(n + 1);
    for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(i)] = std::sin(2.0 * std::numbers::pi * i / n);
    EXPECT_EQ(singular_quadratic_form(spec, zero, n).value, 0.0);
    EXPECT_NEAR(singular_quadratic_form(spec, one, n).value, 4.0 / 3.0, 2e-5);
    EXPECT_GE(singular_quadratic_form(spec, s, n).value, 0.0);
    EXPECT_THROW(singular_quadratic_form(spec, one, n / 2), PreconditionError);
}

// f = t: int_0^1 t int_0^t s (t-s)^(-a) ds dt = 1 / ((1-a)(2-a)(4-a))
TEST(SingularForm, AnalyticLinear) {
    const int n = 128;
    std::vector<double> f(n + 1);
    for (int i = 0; i <= n; ++i) f[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    for (double a : {0.25, 0.5, 0.75}) {
        const double exact = 1.0 / ((1.0 - a) * (2.0 - a) * (4.0 - a));
        const auto r = singular_quadratic_form(KernelSpec::make(KernelKind::CaputoPlain, a), f, n);
        EXPECT_NEAR(r.value, exact, 3e-4 * exact) << a;
        EXPECT_LT(std::fabs(r.refined_value - exact), std::fabs(r.value - exact)) << a;
    }
}

TEST(Ibp, Examples) {
    SmoothKernel k{[](double x, double y) { return std::pow(x - y + 0.1, -0.5); }, {}, {}, {}};
    auto zero = [](double) { return 0.0; };
    const auto z = ibp_decomposition(k, zero, 64, 0.2, 0.8);
    EXPECT_EQ(z.total, 0.0);

    auto phi = [](double x) { return bump(x, 0.5, 0.3); };
    const auto r = ibp_decomposition(k, phi, 256, 0.2, 0.8);
    EXPECT_GE(r.boundary_term, 0.0);
    EXPECT_GE(r.edge_x_term, 0.0);
    EXPECT_GE(r.bulk_term, 0.0);
    EXPECT_GE(r.edge_y_term, 0.0);
    EXPECT_GT(r.total, 0.0);
    EXPECT_LE(r.relative_gap, 1e-5);

    // independent double integral of the original form
    const double direct = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) {
            return phi(x) * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                [&](double y) { return std::pow(x - y + 0.1, -0.5) * phi(y); }, 0.2, x, 10, 1e-12);
        },
        0.2, 0.8, 10, 1e-12);
    EXPECT_NEAR(r.total, direct, 1e-5 * direct);

    SmoothKernel one{[](double, double) { return 1.0; }, [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                     [](double, double) { return 0.0; }};
    auto odd = [](double x) { return bump(x, 0.5, 0.3) * (x - 0.5); };
    const auto o = ibp_decomposition(one, odd, 256, 0.2, 0.8);
    EXPECT_NEAR(o.boundary_term, 0.0, 1e-14);
    EXPECT_NEAR(o.bulk_term, 0.0, 1e-14);
    EXPECT_NEAR(o.total, 0.0, 1e-12);
}

TEST(OmegaCondition, Examples) {
    for (double a : {0.2, 0.5, 0.8}) EXPECT_TRUE(omega_condition_check(WeightFn::caputo(a), a, 64));
    WeightFn flat;
    flat.eval = [](double) { return 1.0; };
    EXPECT_FALSE(omega_condition_check(flat, 0.5, 64));
    WeightFn damped;
    damped.eval = [](double t) { return std::pow(t, -0.7) * std::pow(1.0 - t, -0.3) * std::exp(-t); };
    EXPECT_TRUE(omega_condition_check(damped, 0.3, 64));
}

TEST(BridgeSeries, Examples) {
    EXPECT_EQ(bridge_sine_series(0.0, 0.4, 50), 0.0);
    EXPECT_EQ(bridge_sine_series(0.7, 0.0, 50), 0.0);
    EXPECT_NEAR(bridge_sine_series(0.5, 0.5, 1), 2.0 / (std::numbers::pi * std::numbers::pi), 1e-15);
    EXPECT_NEAR(bridge_sine_series(0.25, 0.75, 1000), 0.0625, 5e-4);
    EXPECT_THROW(bridge_sine_series(1.5, 0.2, 10), DomainError);
}

TEST(Polya, Examples) {
    const std::vector<double> xi = {1.0, 3.0};
    const auto e = polya_transform_check([](double x) { return std::exp(-x); }, xi);
    EXPECT_NEAR(e.values[0], 0.5, 1e-12);
    EXPECT_NEAR(e.values[1], 0.1, 1e-12);
    EXPECT_TRUE(e.passed);
    const std::vector<double> two = {2.0};
    const auto t = polya_transform_check([](double x) { return std::max(0.0, 1.0 - x); }, two);
    EXPECT_NEAR(t.values[0], (1.0 - std::cos(2.0)) / 4.0, 1e-12);
    EXPECT_TRUE(t.passed);
}

TEST(RatioIdentity, Examples) {
    std::vector<double> zero(64, 0.0);
    EXPECT_EQ(ratio_kernel_identity_residual(zero).residual, 0.0);
    std::vector<double> u(512), v(512);
    for (int i = 0; i < 512; ++i) {
        const double x = i / 511.0;
        u[static_cast<std::size_t>(i)] = bump(x, 0.5, 0.3);
        v[static_cast<std::size_t>(i)] = (x < 0.5 ? -1.0 : 1.0) * bump(x, 0.5, 0.3);
    }
    const auto r = ratio_kernel_identity_residual(u);
    EXPECT_LE(r.residual, 1e-4 * std::fabs(r.rhs));
    EXPECT_GE(ratio_kernel_identity_residual(v).rhs, 0.0);
}
