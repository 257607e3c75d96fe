#pragma once

// The curve C1 of maximizers q_max(p0) of T_+(p0, .) for p0 > p_*, and the
// amplitude p_** where it meets the homoclinic orbit.

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "levelcurve.hpp"
#include "phase_plane.hpp"
#include "symmetric_state.hpp"

namespace nlsgraph {

/// Upper end of the interval where C1 is searched for the homoclinic crossing.
inline const double p_c1_limit = std::sqrt(2.0 / 3.0);

/// Critical point of T_+(p0, .) without checking that it lies below the
/// homoclinic value sqrt(A(p0)); p0 in (p_*, 1).
inline double q_max_unchecked(double p0, const QuadratureSpec& spec = {}) {
    if (!(p0 > p_star && p0 < 1.0)) throw std::invalid_argument("q_max: p0 must lie in (p_*, 1)");
    const double lo = p0 * std::sqrt(2.0 * p0 * p0 - 1.0) + 1e-12;
    auto d = [&](double q) { return dT_plus_dq0(p0, q, spec); };
    const double d_lo = d(lo);
    if (!(d_lo > 0.0)) throw numerical_error("q_max: derivative not positive at the lower bracket");
    double hi = std::max(2.0 * lo, lo + 1e-3);
    double d_hi = d(hi);
    for (int k = 0; k < 80 && d_hi >= 0.0; ++k) {
        hi *= 2.0;
        d_hi = d(hi);
    }
    if (d_hi >= 0.0) throw numerical_error("q_max: no sign change of dT_+/dq0");
    return detail::bracketed_root(d, lo, hi, d_lo, d_hi);
}

/// Root of q_max(p0) - sqrt(A(p0)) on (p_*, sqrt(2/3)).
inline double find_p_star_star(const QuadratureSpec& spec = {}) {
    auto g = [&](double p0) { return q_max_unchecked(p0, spec) - std::sqrt(potential(p0)); };
    const double lo = p_star + 1e-6;
    const double hi = p_c1_limit;
    const double g_lo = g(lo);
    const double g_hi = g(hi);
    if (!(g_lo < 0.0 && g_hi > 0.0)) throw numerical_error("find_p_star_star: no homoclinic crossing of C1");
    return detail::bracketed_root(g, lo, hi, g_lo, g_hi);
}

/// The unique maximizer of T_+(p0, .) for p0 in (p_*, p_**).
inline double q_max(double p0, const QuadratureSpec& spec = {}) {
    if (!(p0 > p_star && p0 < 1.0)) throw std::invalid_argument("q_max: p0 must lie in (p_*, p_**)");
    const double q = q_max_unchecked(p0, spec);
    if (!(q < std::sqrt(potential(p0)))) {
        throw std::invalid_argument("q_max: p0 >= p_**, T_+ has no critical point below the homoclinic value");
    }
    return q;
}

}  // namespace nlsgraph
