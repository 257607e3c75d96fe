#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nlsgraph/spectral.hpp"

using namespace nlsgraph;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

TEST(V0Tail, ZeroSpectralParameterShape) {
    // Matches (1/2) sech tanh up to the constant factor e^a.
    for (double a : {0.3, 1.0, 2.5}) {
        for (double z : {0.0, 0.5, 2.0, 7.0}) {
            const double ref = 0.5 * sech(z + a) * std::tanh(z + a);
            EXPECT_NEAR(v0_tail(z, 0.0, a).value / ref, std::exp(a), 1e-12 * std::exp(a));
        }
        // boundary values against -phi'(a)/2 and -phi''(a)/2 for phi = sech, same factor
        const double dphi = -sech(a) * std::tanh(a);
        const double ddphi = sech(a) * (std::tanh(a) * std::tanh(a) - sech(a) * sech(a));
        const auto at0 = v0_tail(0.0, 0.0, a);
        EXPECT_NEAR(at0.value, -0.5 * dphi * std::exp(a), 1e-14);
        EXPECT_NEAR(at0.deriv, -0.5 * ddphi * std::exp(a), 1e-13);
    }
}

TEST(V0Tail, DerivativeMatchesFiniteDifference) {
    const double h = 1e-6;
    for (double lambda : {-3.0, -0.5, 0.4}) {
        const double fd = (v0_tail(1.0 + h, lambda, 0.8).value - v0_tail(1.0 - h, lambda, 0.8).value) / (2.0 * h);
        EXPECT_NEAR(v0_tail(1.0, lambda, 0.8).deriv, fd, 1e-8);
    }
}

TEST(V0Tail, SolvesTailEquation) {
    // -V'' + (1 - lambda - 6 sech^2(z + a)) V = 0
    const double a = 0.6;
    const double lambda = -1.3;
    const double h = 1e-4;
    for (double z : {0.2, 1.0, 3.0}) {
        const double vpp =
            (v0_tail(z + h, lambda, a).value - 2.0 * v0_tail(z, lambda, a).value + v0_tail(z - h, lambda, a).value) /
            (h * h);
        const double s = sech(z + a);
        EXPECT_NEAR(-vpp + (1.0 - lambda - 6.0 * s * s) * v0_tail(z, lambda, a).value, 0.0, 1e-6);
    }
}

TEST(V0Tail, PositiveForNonPositiveLambda) {
    for (double lambda : {-20.0, -1.0, 0.0})
        for (double a : {0.1, 1.0})
            for (int i = 0; i < 100; ++i) EXPECT_GT(v0_tail(0.2 * i, lambda, a).value, 0.0);
    EXPECT_THROW(v0_tail(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(Sp2, SecondEigenvaluePositive) {
    for (double eps : {0.2, 1.0, 3.0}) {
        const auto b = sp2_eigenvalues(solve_symmetric(eps, 2), 2);
        EXPECT_GT(b[1], 0.0) << eps;
        EXPECT_LT(b[0], b[1]);
    }
}

TEST(Sp2, FirstEigenvalueCrossesAtBifurcation) {
    const auto r = *find_bifurcation(3);
    EXPECT_GT(sp2_eigenvalues(solve_symmetric(0.5 * r.eps_star, 3), 1)[0], 0.0);
    EXPECT_LT(sp2_eigenvalues(solve_symmetric(2.0 * r.eps_star, 3), 1)[0], 0.0);
    EXPECT_LT(std::abs(sp2_eigenvalues(symmetric_from_p0(r.p_bif, 3), 1)[0]), 1e-6);
}

TEST(Sp2, NodeCountsOfEigenfunctions) {
    const auto s = solve_symmetric(1.0, 2);
    const auto b = sp2_eigenvalues(s, 5);
    const double len = loop_half_length(s);
    for (int n = 1; n <= 5; ++n) {
        const Parity parity = n % 2 == 1 ? Parity::even : Parity::odd;
        // just below the eigenvalue: (n-1)/2 zeros on (0, L) for the half loop
        const auto shot = sp2_shoot(s.level, len, b[static_cast<std::size_t>(n - 1)] - 1e-9, parity);
        const int interior_full = parity == Parity::even ? 2 * shot.zeros : 2 * shot.zeros + 1;
        EXPECT_EQ(interior_full, n - 1) << n;
        EXPECT_LT(std::abs(shot.v_end), 1e-6);
    }
    for (int n = 1; n < 5; ++n) EXPECT_LT(b[static_cast<std::size_t>(n - 1)], b[static_cast<std::size_t>(n)]);
}

TEST(Sp2, ZeroModeBoundarySignMatchesPeriodDerivative) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double p0 = 0.3 + 0.55 * unit(rng);
        const double q0 = 0.02 + 0.4 * unit(rng);
        const auto lvl = energy_level(p0, q0);
        const double d = dT_plus_dq0(p0, q0);
        if (std::abs(d) < 1e-6) continue;
        const auto shot = sp2_shoot(lvl, period_T_plus(p0, q0), 0.0, Parity::even);
        EXPECT_EQ(shot.v_end > 0.0, d > 0.0) << p0 << ' ' << q0;
    }
}

TEST(Sp1, GroundEigenvalueNegative) {
    for (int n : {1, 2, 3}) {
        for (double eps : {0.2, 1.0, 3.0}) {
            const auto g = sp1_eigenvalues(solve_symmetric(eps, n), 3);
            ASSERT_FALSE(g.empty());
            EXPECT_LT(g[0], 0.0);
            if (g.size() > 1) {
                EXPECT_GT(g[1], 0.0);
            }
        }
    }
}

TEST(Sp1, GroundEigenvalueBelowRayleighBound) {
    // <L Phi, Phi> = -4 ||Phi||_4^4 < 0 bounds gamma_1 from above by the quotient.
    const auto s = solve_symmetric(0.8, 2);
    const auto g = sp1_eigenvalues(s, 1);
    const double l2 = 2.0 * s.n_loops * weighted_level_integral(s.level, Kernel::u_squared, Segment::plus) + tail_mass(s.a);
    const double t = std::tanh(s.a);
    const double l4 = 2.0 * s.n_loops * weighted_level_integral(s.level, Kernel::u_fourth, Segment::plus) +
                      2.0 / 3.0 - t + t * t * t / 3.0;
    EXPECT_LT(g[0], -4.0 * l4 / l2);
}

TEST(Spectrum, MorseNullityTrichotomy) {
    const auto r = *find_bifurcation(3);
    EXPECT_EQ(morse_nullity(solve_symmetric(0.5 * r.eps_star, 3)), std::make_pair(1, 0));
    EXPECT_EQ(morse_nullity(symmetric_from_p0(r.p_bif, 3)), std::make_pair(1, 2));
    EXPECT_EQ(morse_nullity(solve_symmetric(2.0 * r.eps_star, 3)), std::make_pair(3, 0));
}

TEST(Spectrum, OrderedWithGroundFirst) {
    const auto rep = spectral_report(solve_symmetric(1.0, 3), 4);
    ASSERT_GE(rep.lambda_ordered.size(), 2u);
    EXPECT_EQ(rep.lambda_ordered[0].kind, "gamma");
    EXPECT_LT(rep.lambda_ordered[0].lambda, rep.lambda_ordered[1].lambda);
    for (std::size_t i = 1; i < rep.lambda_ordered.size(); ++i) {
        EXPECT_LE(rep.lambda_ordered[i - 1].lambda, rep.lambda_ordered[i].lambda);
    }
    for (const auto& e : rep.lambda_ordered) {
        if (e.kind == "beta_even") {
            EXPECT_EQ(e.multiplicity, 2);
        }
        if (e.kind == "beta_odd") {
            EXPECT_EQ(e.multiplicity, 3);
        }
    }
}

TEST(Spectrum, BetaCrossingMatchesPeriodFunctionRoot) {
    for (int n : {2, 3}) {
        const double eps_spectral = find_beta1_crossing(n);
        const double eps_period = find_bifurcation(n)->eps_star;
        EXPECT_LT(std::abs(eps_spectral - eps_period) / eps_period, 1e-6) << n;
    }
}

TEST(Laplacian, ThreeLoops) {
    const auto l = laplacian_spectrum(3, 2);
    const std::vector<std::pair<double, int>> expect{{0.25, 2}, {1.0, 3}, {2.25, 2}, {4.0, 3}};
    EXPECT_EQ(l.eigenvalues, expect);
    EXPECT_TRUE(l.no_negative_eigenvalue);
}

TEST(Laplacian, TadpoleHasNoHalfIntegerFamily) {
    const auto l = laplacian_spectrum(1, 3);
    const std::vector<std::pair<double, int>> expect{{1.0, 1}, {4.0, 1}, {9.0, 1}};
    EXPECT_EQ(l.eigenvalues, expect);
    EXPECT_TRUE(l.no_negative_eigenvalue);
}

TEST(Laplacian, RejectsBadInput) {
    EXPECT_THROW(laplacian_spectrum(0, 2), std::invalid_argument);
    EXPECT_THROW(laplacian_spectrum(2, 0), std::invalid_argument);
}
