#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fraclab/solver.hpp"
#include "fraclab/diagnostics.hpp"

using namespace fraclab;
using namespace fraclab::solver;
using spectral::Field;
using spectral::TorusGrid;

namespace {

Field cos_field(const TorusGrid& g, double amp, int k = 1) {
    return Field::from_function(g, [=](double x, double, double) { return amp * std::cos(k * x); });
}

Field constant(const TorusGrid& g, double c) { return Field::from_physical(g, std::vector<double>(g.size(), c)); }

double rel_l2(const Field& a, const Field& b) {
    std::vector<spectral::cplx> d(a.grid().size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.spectral()[i] - b.spectral()[i];
    return spectral::norm(Field::from_spectral(a.grid(), d), spectral::NormKind::L2) / spectral::norm(b, spectral::NormKind::L2);
}

}  // namespace

TEST(Mesh, UniformGradedRefined) {
    const auto u = TimeMesh::uniform(2.0, 4);
    EXPECT_EQ(u.nodes(), (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
    const auto g = TimeMesh::graded(1.0, 4, 2.0);
    EXPECT_DOUBLE_EQ(g[1], 1.0 / 16.0);
    EXPECT_DOUBLE_EQ(g[2], 0.25);
    EXPECT_EQ(g.refined().steps(), 8);
    EXPECT_DOUBLE_EQ(g.refined()[4], 0.25);
    EXPECT_DOUBLE_EQ(TimeMesh::default_grading(0.5), 3.0);
    EXPECT_THROW(TimeMesh::graded(1.0, 4, 0.5), PreconditionError);
    EXPECT_THROW(TimeMesh::from_nodes({0.0, 0.5, 0.5}), PreconditionError);
    EXPECT_EQ(TimeMesh::from_nodes({0.0, 0.2, 1.0}).refined().nodes(), (std::vector<double>{0.0, 0.1, 0.2, 0.6, 1.0}));
}

TEST(L1, Examples) {
    const auto mesh = TimeMesh::uniform(1.0, 16);
    std::vector<double> c(17, 3.0), lin(17), sq;
    for (int i = 0; i <= 16; ++i) lin[static_cast<std::size_t>(i)] = mesh[static_cast<std::size_t>(i)];
    EXPECT_EQ(l1_caputo(mesh, c, 16, 0.5), 0.0);
    EXPECT_NEAR(l1_caputo(mesh, lin, 16, 0.5), 1.0 / std::tgamma(1.5), 1e-14);
    const auto m64 = TimeMesh::uniform(1.0, 64);
    for (double t : m64.nodes()) sq.push_back(t * t);
    EXPECT_NEAR(l1_caputo(m64, sq, 64, 0.5), 2.0 / std::tgamma(2.5), 3e-3);
}

TEST(L1, AffineExactOnGradedMesh) {
    const auto mesh = TimeMesh::graded(2.0, 40, 2.5);
    std::vector<double> v;
    for (double t : mesh.nodes()) v.push_back(1.0 - 3.0 * t);
    for (double a : {0.2, 0.5, 0.9})
        for (int n : {1, 7, 40})
            EXPECT_NEAR(l1_caputo(mesh, v, n, a), -3.0 * std::pow(mesh[static_cast<std::size_t>(n)], 1.0 - a) / std::tgamma(2.0 - a), 1e-12);
}

TEST(LinearMode, Examples) {
    EXPECT_EQ(linear_mode_exact({-1.0, 2.5}, 0.5, 0.0), 2.5);
    EXPECT_NEAR(linear_mode_exact({-1.0, 1.0}, 1.0, 1.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(linear_mode_exact({-1.0, 1.0}, 0.5, 1.0), std::numbers::e * std::erfc(1.0), 1e-14);
}

TEST(LinearMode, L1GradedConverges) {
    const double exact = linear_mode_exact({-1.0, 1.0}, 0.5, 1.0);
    const auto w = solve_linear_mode_l1(-1.0, 1.0, 0.5, TimeMesh::graded(1.0, 512, 3.0));
    EXPECT_NEAR(w.back(), exact, 2e-5);
}

TEST(StepL1, Equilibria) {
    const TorusGrid g(1, 16);
    for (double c : {0.0, 1.0, -1.0}) {
        SolverConfig cfg;
        cfg.alpha = 0.6;
        cfg.mesh = TimeMesh::uniform(10.0, 1000);
        const auto tr = run(ModelKind::allen_cahn(0.1), constant(g, c), cfg);
        for (const auto& s : tr.states)
            for (double v : s.physical()) ASSERT_EQ(v, c);
    }
}

TEST(StepL1, LinearizationSmallAmplitude) {
    const TorusGrid g(1, 32);
    const double nu = 0.1, amp = 1e-4, a = 0.5;
    SolverConfig cfg;
    cfg.alpha = a;
    cfg.mesh = TimeMesh::graded(1.0, 256, TimeMesh::default_grading(a));
    const auto tr = run(ModelKind::allen_cahn(nu), cos_field(g, amp, 2), cfg);
    const double lambda = 1.0 - nu * 4.0;
    for (std::size_t n = 1; n < tr.states.size(); n += 17) {
        const double t = tr.mesh[n];
        const double expect = amp * specfun::mittag_leffler({a, 1.0}, lambda * std::pow(t, a));
        const double got = tr.states[n].spectral()[2].real() / 16.0;
        EXPECT_NEAR(got / expect, 1.0, 1e-2) << t;
    }
}

TEST(ExpIntegrator, LinearProblemExact) {
    const TorusGrid g(1, 16);
    const auto phi0 = Field::from_function(g, [](double x, double, double) { return 0.3 * std::cos(x) + 0.1 * std::sin(3.0 * x) + 0.05; });
    SolverConfig cfg;
    cfg.alpha = 0.4;
    cfg.scheme = Scheme::ExpIntegrator;
    cfg.include_cubic = false;
    cfg.mesh = TimeMesh::graded(1.0, 20, 2.0);
    const auto model = ModelKind::allen_cahn(0.2);
    const auto tr = run(model, phi0, cfg);
    const auto s0 = spectral::with_both(phi0).spectral();
    for (std::size_t n = 1; n < tr.states.size(); ++n) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double lam = model.generator()(g.wavevector(i));
            const double e = linear_mode_exact({lam, 1.0}, cfg.alpha, tr.mesh[n]);
            EXPECT_NEAR(std::abs(tr.states[n].spectral()[i] - e * s0[i]), 0.0, 1e-9 * std::max(1.0, std::abs(s0[i])));
        }
    }
}

// alpha = 1: reproduce the classical exponential Euler recursion written out here
TEST(ExpIntegrator, ClassicalLimit) {
    const TorusGrid g(1, 16);
    const auto phi0 = spectral::with_both(Field::from_function(g, [](double x, double, double) { return 0.4 * std::cos(x) + 0.2 * std::sin(2.0 * x); }));
    const auto model = ModelKind::allen_cahn(1.0);
    SolverConfig cfg;
    cfg.alpha = 1.0;
    cfg.scheme = Scheme::ExpIntegrator;
    cfg.mesh = TimeMesh::uniform(1.0, 50);
    const auto tr = run(model, phi0, cfg);
    const double tau = 0.02;
    Field u = phi0;
    for (int n = 1; n <= 50; ++n) {
        const auto c = spectral::nonlinear_term(u, true).spectral();
        std::vector<spectral::cplx> next(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double lam = 1.0 - spectral::k_squared(g.wavevector(i));
            const double phi1 = lam == 0.0 ? tau : std::expm1(lam * tau) / lam;
            next[i] = std::exp(lam * tau) * u.spectral()[i] - phi1 * c[i];
        }
        u = spectral::real_field(g, next);
        EXPECT_LE(rel_l2(tr.states[static_cast<std::size_t>(n)], u), 1e-8) << n;
    }
}

TEST(ExpIntegrator, EquilibriaToRounding) {
    const TorusGrid g(1, 8);
    for (double c : {0.0, 1.0, -1.0}) {
        SolverConfig cfg;
        cfg.alpha = 0.5;
        cfg.scheme = Scheme::ExpIntegrator;
        cfg.mesh = TimeMesh::uniform(5.0, 100);
        const auto tr = run(ModelKind::allen_cahn(0.1), constant(g, c), cfg);
        for (const auto& s : tr.states)
            for (double v : s.physical()) EXPECT_NEAR(v, c, 1e-12);
    }
}

TEST(Schemes, CrossSchemeAgreement) {
    const TorusGrid g(1, 32);
    const auto phi0 = cos_field(g, 0.05);
    SolverConfig cfg;
    cfg.alpha = 0.5;
    cfg.mesh = TimeMesh::graded(1.0, 256, 3.0);
    const auto a = run(ModelKind::allen_cahn(0.1), phi0, cfg);
    cfg.scheme = Scheme::ExpIntegrator;
    const auto b = run(ModelKind::allen_cahn(0.1), phi0, cfg);
    EXPECT_LE(rel_l2(a.states.back(), b.states.back()), 5e-3);
}

TEST(Picard, Examples) {
    const TorusGrid g(1, 32);
    const auto z = picard_verify(ModelKind::allen_cahn(0.1), constant(g, 0.0), 0.5, 0.01, 5);
    for (double v : z.gaps) EXPECT_EQ(v, 0.0);
    const auto p = picard_verify(ModelKind::allen_cahn(0.1), cos_field(g, 0.1), 0.5, 0.01, 6);
    ASSERT_GE(p.gaps.size(), 3u);
    EXPECT_FALSE(p.diverged);
    for (std::size_t i = 1; i < p.gaps.size(); ++i)
        if (p.gaps[i - 1] > 1e-14) EXPECT_LE(p.gaps[i] / p.gaps[i - 1], 0.5);
    EXPECT_NO_THROW(picard_verify(ModelKind::allen_cahn(0.1), cos_field(g, 1.0), 0.5, 10.0, 8));
}

TEST(Run, ZeroTrajectoryEnergy) {
    const TorusGrid g(1, 16);
    SolverConfig cfg;
    cfg.mesh = TimeMesh::uniform(1.0, 10);
    const auto tr = run(ModelKind::allen_cahn(0.1), constant(g, 0.0), cfg);
    for (const auto& s : tr.states) EXPECT_NEAR(diagnostics::energy(s, 0.1), std::numbers::pi / 2.0, 1e-14);
}

TEST(Run, CahnHilliardMean) {
    const TorusGrid g(1, 64);
    SolverConfig cfg;
    cfg.alpha = 0.5;
    cfg.mesh = TimeMesh::graded(5.0, 256, 3.0);
    const auto tr = run(ModelKind::cahn_hilliard(0.1), cos_field(g, 0.1), cfg);
    for (const auto& s : tr.states) EXPECT_LE(std::fabs(spectral::mean(s)), 1e-12);
}

TEST(Run, Preconditions) {
    const TorusGrid g(1, 16);
    SolverConfig cfg;
    cfg.mesh = TimeMesh::uniform(1.0, 4);
    EXPECT_THROW(run(ModelKind::cahn_hilliard(0.1), constant(g, 0.2), cfg), PreconditionError);
    EXPECT_THROW(run(ModelKind::allen_cahn(0.0), constant(g, 0.2), cfg), PreconditionError);
    cfg.alpha = 1.0;
    EXPECT_THROW(run(ModelKind::allen_cahn(0.1), constant(g, 0.2), cfg), DomainError);
    cfg.scheme = Scheme::ExpIntegrator;
    EXPECT_NO_THROW(run(ModelKind::allen_cahn(0.1), constant(g, 0.2), cfg));
    cfg.alpha = 1.2;
    EXPECT_THROW(run(ModelKind::allen_cahn(0.1), constant(g, 0.2), cfg), DomainError);
}

// last-step L1 weight falls below the CH growth rate at k=2, so the run refines once
TEST(Run, RefinesOnStepFailure) {
    const TorusGrid g(1, 64);
    SolverConfig cfg;
    cfg.alpha = 0.3;
    cfg.mesh = TimeMesh::graded(5.0, 256, TimeMesh::default_grading(0.3));
    const auto tr = run(ModelKind::cahn_hilliard(0.1), cos_field(g, 0.05), cfg);
    EXPECT_EQ(tr.refinements, 1);
    EXPECT_EQ(tr.mesh.steps(), 512);
    cfg.mesh = TimeMesh::uniform(50.0, 4);
    EXPECT_THROW(run(ModelKind::cahn_hilliard(0.1), cos_field(g, 0.05), cfg), NonConvergenceError);
}
