#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fraclab/kernels.hpp"
#include "fraclab/reference.hpp"
#include "fraclab/solver.hpp"

using namespace fraclab;
using namespace fraclab::reference;

TEST(HighPrec, Examples) {
    EXPECT_NEAR(highprec_ml(1.0, 1.0, 1.0, 200).value, std::numbers::e, 1e-15);
    EXPECT_NEAR(highprec_ml(0.5, 1.0, -1.0, 400).value, 0.4275835761558070, 1e-15);
    EXPECT_NEAR(highprec_ml(2.0, 1.0, -4.0, 200).value, std::cos(2.0), 1e-15);
}

TEST(HighPrec, ErfcIdentity) {
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        const auto r = highprec_ml(0.5, 1.0, -x, 2000);
        EXPECT_NEAR(r.value, std::exp(x * x) * std::erfc(x), std::max(r.rounding_bound, 1e-15)) << x;
    }
}

TEST(HighPrec, Preconditions) {
    EXPECT_THROW(highprec_ml(0.5, 1.0, 31.0, 400), PreconditionError);
    EXPECT_THROW(highprec_ml(0.5, 1.0, -10.0, 5), EvaluationError);
}

TEST(HighPrec, AgreesWithFastPathWhereCertified) {
    int compared = 0;
    for (double a : {0.3, 0.6, 1.0, 1.5})
        for (double z = -25.0; z <= 25.0; z += 1.25) {
            HighPrecResult h;
            try {
                h = highprec_ml(a, 1.0, z, 4000);
            } catch (const EvaluationError&) {
                continue;
            }
            if (h.rounding_bound > 1e-11 * std::fabs(h.value)) continue;
            EXPECT_NEAR(specfun::mittag_leffler({a, 1.0}, z) / h.value, 1.0, 1e-9) << a << ' ' << z;
            ++compared;
        }
    EXPECT_GT(compared, 60);
}

TEST(DenseForm, Examples) {
    auto one = [](double) { return 1.0; };
    EXPECT_NEAR(dense_quadratic_form([](double, double) { return 1.0; }, one, 256), 0.5, 1e-14);
    EXPECT_NEAR(dense_quadratic_form([](double x, double y) { return std::pow(x - y, -0.5); }, one, 256, 0.5), 4.0 / 3.0, 1e-12);
    const auto bb = kernels::KernelSpec::make(kernels::KernelKind::BrownianBridge);
    EXPECT_GE(dense_quadratic_form([&](double x, double y) { return kernels::kernel_eval(bb, x, y); },
                                   [](double x) { return std::sin(2.0 * std::numbers::pi * x); }, 512),
              0.0);
    EXPECT_THROW(dense_quadratic_form([](double, double) { return 1.0; }, one, 16, 1.0), DomainError);
}

TEST(DenseForm, AgreesWithSingularForm) {
    const int nq = 256;
    for (double a : {0.25, 0.5, 0.75}) {
        auto f = [](double t) { return std::cos(3.0 * t) + t; };
        std::vector<double> fs(nq + 1);
        for (int i = 0; i <= nq; ++i) fs[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / nq);
        const double fast = kernels::singular_quadratic_form(kernels::KernelSpec::make(kernels::KernelKind::CaputoPlain, a), fs, nq).value;
        const double oracle = dense_quadratic_form([a](double x, double y) { return std::pow(x - y, -a); }, f, 1024, a);
        EXPECT_NEAR(fast / oracle, 1.0, 1e-4) << a;
    }
}

TEST(PolynomialForm, ClosedForms) {
    const std::vector<double> one = {1.0};
    EXPECT_NEAR(polynomial_caputo_form(one, 0.5, kernels::KernelKind::CaputoPlain), 4.0 / 3.0, 1e-14);
    // int_0^1 (1-x)^(-a) x^(1-a)/(1-a) dx = B(2-a, 1-a)/(1-a)
    const double a = 0.4;
    const double b = std::tgamma(2.0 - a) * std::tgamma(1.0 - a) / std::tgamma(3.0 - 2.0 * a);
    EXPECT_NEAR(polynomial_caputo_form(one, a, kernels::KernelKind::CaputoEndWeight), b / (1.0 - a), 1e-13);
    EXPECT_THROW(polynomial_caputo_form(one, a, kernels::KernelKind::BrownianBridge), PreconditionError);
}

TEST(PolynomialForm, AgreesWithSingularForm) {
    const std::vector<double> c = {0.3, -2.0, 0.0, 1.5};
    const int nq = 512;
    std::vector<double> s(nq + 1);
    for (int i = 0; i <= nq; ++i) {
        const double t = static_cast<double>(i) / nq;
        s[static_cast<std::size_t>(i)] = 0.3 - 2.0 * t + 1.5 * t * t * t;
    }
    for (double a : {0.25, 0.5, 0.75})
        for (auto kind : {kernels::KernelKind::CaputoPlain, kernels::KernelKind::CaputoTimeWeight, kernels::KernelKind::CaputoEndWeight}) {
            const double exact = polynomial_caputo_form(c, a, kind);
            EXPECT_NEAR(kernels::singular_quadratic_form(kernels::KernelSpec::make(kind, a), s, nq).refined_value / exact, 1.0, 1e-4)
                << a << ' ' << kernels::to_string(kind);
        }
}

TEST(Volterra, Examples) {
    const auto mesh = solver::TimeMesh::uniform(1.0, 64);
    for (double w : brute_volterra_solve({0.0, 2.0}, 0.5, mesh)) EXPECT_EQ(w, 2.0);
    const auto fine = solver::TimeMesh::graded(1.0, 1024, 3.0);
    EXPECT_NEAR(brute_volterra_solve({-1.0, 1.0}, 0.5, fine).back(), solver::linear_mode_exact({-1.0, 1.0}, 0.5, 1.0), 1e-5);
    const auto u = solver::TimeMesh::uniform(1.0, 256);
    const auto w1 = brute_volterra_solve({-1.0, 1.0}, 1.0, u);
    for (std::size_t n = 0; n < w1.size(); n += 32) EXPECT_NEAR(w1[n], std::exp(-u[n]), 1e-6);
}
