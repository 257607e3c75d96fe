#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nlsgraph/phase_plane.hpp"

using namespace nlsgraph;

TEST(Potential, RootsAndCenter) {
    EXPECT_EQ(potential(0.0), 0.0);
    EXPECT_EQ(potential(1.0), 0.0);
    EXPECT_NEAR(potential(p_star), 0.25, 1e-16);
}

TEST(Potential, Derivatives) {
    EXPECT_NEAR(potential_deriv(p_star), 0.0, 1e-15);
    EXPECT_EQ(potential_deriv(0.0), 0.0);
    EXPECT_EQ(potential_deriv(1.0), -2.0);
    EXPECT_NEAR(potential_second_deriv(p_star), -4.0, 1e-15);
}

TEST(Invariant, Values) {
    EXPECT_NEAR(invariant(p_star, 0.0), -0.25, 1e-16);
    EXPECT_EQ(invariant(0.0, 0.0), 0.0);
    EXPECT_NEAR(invariant(0.5, 0.1), -0.1775, 1e-16);
    EXPECT_NEAR(invariant(0.5, 0.1), energy_level(0.5, 0.1).E, 1e-16);
}

TEST(EnergyLevel, DoubleRootAtCenter) {
    const auto lvl = energy_level(p_star, 0.0);
    EXPECT_NEAR(lvl.E, -0.25, 1e-16);
    EXPECT_DOUBLE_EQ(lvl.p_plus, p_star);
    ASSERT_TRUE(lvl.p_minus.has_value());
    EXPECT_DOUBLE_EQ(*lvl.p_minus, p_star);
}

TEST(EnergyLevel, HomoclinicLevel) {
    const auto lvl = energy_level(0.6, std::sqrt(potential(0.6)));
    EXPECT_NEAR(lvl.E, 0.0, 1e-16);
    EXPECT_NEAR(lvl.p_plus, 1.0, 1e-15);
    EXPECT_NEAR(lvl.p_minus_sq, 0.0, 1e-15);
}

TEST(EnergyLevel, MatchesGenericQuarticRoots) {
    // Positive roots of u^4 - u^2 - E = 0 for E = -0.1775, from a companion
    // matrix eigenvalue solver (numpy.roots).
    const double plus_ref = 0.8770736801185666;
    const double minus_ref = 0.4803558677098415;
    const auto lvl = energy_level(0.5, 0.1);
    EXPECT_NEAR(lvl.E, -0.1775, 1e-16);
    EXPECT_NEAR(lvl.p_plus, plus_ref, 1e-14);
    ASSERT_TRUE(lvl.p_minus.has_value());
    EXPECT_NEAR(*lvl.p_minus, minus_ref, 1e-14);
    EXPECT_NEAR(potential(lvl.p_plus), -lvl.E, 1e-15);
    EXPECT_NEAR(potential(*lvl.p_minus), -lvl.E, 1e-15);
}

TEST(EnergyLevel, RejectsInvalidInput) {
    EXPECT_THROW(energy_level(0.0, 0.1), std::invalid_argument);
    EXPECT_THROW(energy_level(1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(energy_level(-0.3, 0.1), std::invalid_argument);
    EXPECT_THROW(energy_level(0.5, -0.1), std::invalid_argument);
}

TEST(EnergyLevel, PositiveLevelHasNoLowerTurningPoint) {
    const auto lvl = energy_level(0.5, 1.0);
    EXPECT_GT(lvl.E, 0.0);
    EXPECT_FALSE(lvl.p_minus.has_value());
    EXPECT_LT(lvl.p_minus_sq, 0.0);
    EXPECT_GT(lvl.p_plus, 1.0);
}

TEST(EnergyLevel, StableGapsForTinySlope) {
    const double p0 = 0.8;
    const double q0 = 1e-7;
    const auto lvl = energy_level(p0, q0);
    // p_+ - p0 = q0^2 / ((p0^2 - p_-^2)(p_+ + p0)) to leading order.
    const double expected = q0 * q0 / ((p0 * p0 - (1.0 - p0 * p0)) * 2.0 * p0);
    EXPECT_NEAR(lvl.gap_plus() / expected, 1.0, 1e-6);
}

// Properties over random levels with E in (-1/4, 1).
class EnergyLevelProperties : public ::testing::Test {
protected:
    std::mt19937_64 rng{20240917};
    std::uniform_real_distribution<double> unit{0.0, 1.0};

    std::pair<double, double> random_point() {
        while (true) {
            const double p0 = 0.01 + 0.98 * unit(rng);
            const double q0 = 1.2 * unit(rng);
            const double E = q0 * q0 - potential(p0);
            if (E > -0.25 && E < 1.0) return {p0, q0};
        }
    }
};

TEST_F(EnergyLevelProperties, FactorizationIdentity) {
    for (int i = 0; i < 1000; ++i) {
        const auto [p0, q0] = random_point();
        const auto lvl = energy_level(p0, q0);
        for (int j = 0; j < 20; ++j) {
            const double u = p0 + (lvl.p_plus - p0) * unit(rng);
            EXPECT_NEAR(lvl.factorized(u), lvl.E + potential(u), 1e-13);
        }
    }
}

TEST_F(EnergyLevelProperties, RelevelingFromTurningPointIsIdempotent) {
    for (int i = 0; i < 1000; ++i) {
        const auto [p0, q0] = random_point();
        const auto lvl = energy_level(p0, q0);
        if (lvl.p_plus >= 1.0) continue;  // E > 0 puts p_+ outside (0, 1)
        const auto again = energy_level(lvl.p_plus, 0.0);
        EXPECT_NEAR(again.E, lvl.E, 1e-13);
        EXPECT_NEAR(again.p_plus, lvl.p_plus, 1e-13);
        if (lvl.p_minus) {
            ASSERT_TRUE(again.p_minus.has_value());
            EXPECT_NEAR(*again.p_minus, *lvl.p_minus, 1e-13);
        }
    }
}

TEST_F(EnergyLevelProperties, TurningPointOrderingInsideHomoclinicLoop) {
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto [p0, q0] = random_point();
        const auto lvl = energy_level(p0, q0);
        if (!(lvl.E > -0.25 + 1e-12 && lvl.E < 0.0)) continue;
        ++checked;
        ASSERT_TRUE(lvl.p_minus.has_value());
        EXPECT_LT(0.0, *lvl.p_minus);
        EXPECT_LT(*lvl.p_minus, p_star);
        EXPECT_LT(p_star, lvl.p_plus);
        EXPECT_LT(lvl.p_plus, 1.0);
        EXPECT_GE(lvl.E, E_star);
    }
    EXPECT_GT(checked, 100);
}
