#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nlsgraph/profiles.hpp"

using namespace nlsgraph;

TEST(TailClosedForms, MatchNumericIntegrals) {
    const double a = 0.7;
    // composite Simpson on [a, a + 60]
    const int n = 20000;
    const double h = 60.0 / n;
    double m = 0.0;
    double e = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = a + i * h;
        const double s = 1.0 / std::cosh(x);
        const double d = -s * std::tanh(x);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        m += w * s * s * h / 3.0;
        e += w * (d * d - s * s * s * s) * h / 3.0;
    }
    EXPECT_NEAR(tail_mass(a), m, 1e-9);
    EXPECT_NEAR(tail_energy(a), e, 1e-9);
}

TEST(Profile, SymmetricShapeAndBoundary) {
    const auto s = solve_symmetric(0.8, 3);
    const auto w = reconstruct_profile(s, 2001);
    ASSERT_EQ(w.loops.size(), 3u);
    const auto& loop = w.loops[0];
    EXPECT_EQ(loop.u[1000], s.level.p_plus);
    EXPECT_EQ(loop.v[1000], 0.0);
    EXPECT_NEAR(loop.u.front(), s.p0, 1e-8);
    EXPECT_NEAR(loop.u.back(), s.p0, 1e-8);
    EXPECT_LE(w.invariant_drift, 1e-9);
    for (std::size_t i = 1001; i < loop.u.size(); ++i) EXPECT_LT(loop.u[i], loop.u[i - 1]);
    for (double u : loop.u) EXPECT_GT(u, 0.0);
    EXPECT_NEAR(w.tail.z.back(), s.a + 40.0, 1e-12);
    EXPECT_EQ(w.tail.u.front(), 1.0 / std::cosh(s.a));
}

TEST(Profile, SampledObservablesMatchQuadrature) {
    const auto s = solve_symmetric(0.8, 3);
    const auto [m, e] = sampled_mass_energy(reconstruct_profile(s, 40001));
    EXPECT_NEAR(m / s.mass, 1.0, 1e-6);
    EXPECT_NEAR(e / energy_of_state(s), 1.0, 1e-6);
}

TEST(Profile, KsplitComponentsMonotone) {
    const auto s = solve_ksplit_opposite(0.4, 3, 1);
    const auto w = reconstruct_profile(s, 2001);
    EXPECT_LE(w.invariant_drift, 1e-9);
    ASSERT_EQ(w.component_types[0], ComponentType::plus_type);
    ASSERT_EQ(w.component_types[1], ComponentType::minus_type);
    const auto& big = w.loops[0];
    const auto& small = w.loops[1];
    for (std::size_t i = 1001; i < big.u.size(); ++i) {
        EXPECT_LT(big.u[i], big.u[i - 1]);
        EXPECT_GT(small.u[i], small.u[i - 1]);
    }
    EXPECT_NEAR(big.u.back(), s.p0, 1e-8);
    EXPECT_NEAR(small.u.back(), s.p0, 1e-8);
    const auto [m, e] = sampled_mass_energy(reconstruct_profile(s, 40001));
    EXPECT_NEAR(m / s.mass, 1.0, 1e-6);
    EXPECT_NEAR(e / s.energy, 1.0, 1e-6);
}

TEST(Profile, SameRegimeStates) {
    for (const auto& s : solve_ksplit_same(0.7115, 3, 1)) {
        const auto w = reconstruct_profile(s, 20001);
        EXPECT_LE(w.invariant_drift, 1e-9);
        EXPECT_NEAR(w.loops[0].u.back(), s.p0, 1e-8);
        EXPECT_NEAR(w.loops[2].u.back(), s.p0, 1e-8);
        const auto [m, e] = sampled_mass_energy(w);
        EXPECT_NEAR(m / s.mass, 1.0, 1e-6);
        EXPECT_NEAR(e / s.energy, 1.0, 1e-6);
    }
}

TEST(Profile, RejectsTooFewSamples) {
    EXPECT_THROW(reconstruct_profile(solve_symmetric(0.5, 2), 1), std::invalid_argument);
}

TEST(Energy, SmallScalingLimit) {
    const auto s = solve_symmetric(1e-2, 2);
    EXPECT_NEAR(energy_of_state(s) / 1e-6, -1.0 / 3.0, 0.1 / 3.0);
}

TEST(Energy, LargeScalingKsplit) {
    const auto s = solve_ksplit_opposite_eps(2.0, 2, 1);
    EXPECT_NEAR(energy_of_state(s) / 8.0, -2.0 / 3.0, 0.01 * 2.0 / 3.0);
}

TEST(Energy, TadpoleBranchInsideBand) {
    for (int i = 0; i < 20; ++i) {
        const double mu = 0.1 * std::pow(100.0, i / 19.0);
        const auto s = solve_symmetric_mass(mu, 1);
        const double m3 = s.mass * s.mass * s.mass;
        EXPECT_GE(s.energy, -m3 / 3.0) << mu;
        EXPECT_LE(s.energy, -m3 / 12.0) << mu;
    }
}

TEST(Energy, KsplitAboveUpperBound) {
    for (int n : {2, 3}) {
        const auto s = solve_ksplit_opposite_eps(3.0, n, 1);
        EXPECT_GT(s.energy + s.mass * s.mass * s.mass / 12.0, 0.0) << n;
    }
}
