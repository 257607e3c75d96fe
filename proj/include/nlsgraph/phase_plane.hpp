#pragma once

// Closed-form primitives of the planar system v^2 - A(u) = E with
// A(u) = u^2 (1 - u^2), the first integral of u'' = u - 2u^3.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace nlsgraph {

/// Center of the positive homoclinic loop, the unique positive root of A'.
inline const double p_star = 1.0 / std::sqrt(2.0);
/// Level of the center, E_* = -A(p_*).
inline constexpr double E_star = -0.25;

inline constexpr double potential(double u) noexcept { return u * u * (1.0 - u * u); }

inline constexpr double potential_deriv(double u) noexcept { return 2.0 * u * (1.0 - 2.0 * u * u); }

inline constexpr double potential_second_deriv(double u) noexcept { return 2.0 * (1.0 - 6.0 * u * u); }

/// First-order invariant of u'' = u - 2u^3.
inline constexpr double invariant(double u, double v) noexcept { return v * v - potential(u); }

/// A level curve through the boundary point (p0, q0) together with its
/// turning points. Besides the turning points the struct keeps the
/// differences p_plus^2 - p0^2 and p0^2 - p_minus_sq in cancellation-free
/// form; the quadrature relies on them near the turning points.
struct EnergyLevel {
    double p0 = 0.0;
    double q0 = 0.0;
    double E = 0.0;
    double p_plus = 0.0;
    std::optional<double> p_minus;  ///< absent when E >= 0
    double p_minus_sq = 0.0;        ///< (1 - sqrt(1 + 4E)) / 2, negative for E > 0
    double sqrt_disc = 0.0;         ///< sqrt(1 + 4E)
    double d_plus_sq = 0.0;         ///< p_plus^2 - p0^2 >= 0
    double d_minus_sq = 0.0;        ///< p0^2 - p_minus_sq >= 0

    /// p_plus - p0, exact up to rounding even when q0 is tiny.
    [[nodiscard]] double gap_plus() const noexcept { return d_plus_sq / (p_plus + p0); }

    /// p0 - p_minus; only meaningful when p_minus exists.
    [[nodiscard]] double gap_minus() const noexcept {
        return d_minus_sq / (p0 + p_minus.value_or(0.0));
    }

    /// E + A(u) written as (p_plus^2 - u^2)(u^2 - p_minus_sq).
    [[nodiscard]] double factorized(double u) const noexcept {
        return (p_plus * p_plus - u * u) * (u * u - p_minus_sq);
    }
};

namespace detail {

inline EnergyLevel build_level(double p0, double q0, double E) {
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw std::invalid_argument("energy_level: p0 must lie in (0, 1), got " + std::to_string(p0));
    }
    if (!(q0 >= 0.0)) {
        throw std::invalid_argument("energy_level: q0 must be non-negative");
    }
    EnergyLevel lvl;
    lvl.p0 = p0;
    lvl.q0 = q0;
    lvl.E = E;

    // 1 + 4E = 4 q0^2 + (1 - 2 p0^2)^2, which never cancels.
    const double c = 1.0 - 2.0 * p0 * p0;
    const double disc = 4.0 * q0 * q0 + c * c;
    if (lvl.E < E_star - 1e-15 || disc < 0.0) {
        throw std::invalid_argument("energy_level: level below E_* = -1/4 has no real orbit");
    }
    if (disc <= 4e-14) {
        // Double root at the center.
        lvl.sqrt_disc = 0.0;
        lvl.p_plus = p_star;
        lvl.p_minus = p_star;
        lvl.p_minus_sq = 0.5;
        lvl.d_plus_sq = 0.5 - p0 * p0 > 0.0 ? 0.5 - p0 * p0 : 0.0;
        lvl.d_minus_sq = p0 * p0 - 0.5 > 0.0 ? p0 * p0 - 0.5 : 0.0;
        return lvl;
    }
    const double sq = std::sqrt(disc);
    lvl.sqrt_disc = sq;
    lvl.p_plus = std::sqrt(0.5 * (1.0 + sq));
    lvl.p_minus_sq = -2.0 * lvl.E / (1.0 + sq);
    if (lvl.p_minus_sq > 0.0) {
        lvl.p_minus = std::sqrt(lvl.p_minus_sq);
    }
    const double qq2 = 2.0 * q0 * q0;
    lvl.d_plus_sq = c >= 0.0 ? 0.5 * (c + sq) : qq2 / (sq - c);
    lvl.d_minus_sq = c <= 0.0 ? 0.5 * (sq - c) : qq2 / (sq + c);
    return lvl;
}

}  // namespace detail

/// Builds the level through (p0, q0). Throws std::invalid_argument for
/// p0 outside (0, 1), negative q0, or a level below E_* = -1/4.
inline EnergyLevel energy_level(double p0, double q0) { return detail::build_level(p0, q0, q0 * q0 - potential(p0)); }

/// Level just inside the homoclinic loop, given the slope deficit
/// d = sqrt(A(p0)) - q0 > 0. E = -d (sqrt(A(p0)) + q0) keeps full relative
/// precision where q0^2 - A(p0) would cancel.
inline EnergyLevel energy_level_below_homoclinic(double p0, double deficit) {
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw std::invalid_argument("energy_level: p0 must lie in (0, 1), got " + std::to_string(p0));
    }
    const double root_a = std::sqrt(potential(p0));
    if (!(deficit > 0.0 && deficit <= root_a)) {
        throw std::invalid_argument("energy_level_below_homoclinic: deficit must lie in (0, sqrt(A(p0))]");
    }
    const double q0 = root_a - deficit;
    return detail::build_level(p0, q0, -deficit * (root_a + q0));
}

}  // namespace nlsgraph
