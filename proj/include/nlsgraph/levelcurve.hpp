#pragma once

// Quadrature along level curves v^2 - A(u) = E. Every integral has the form
//
//     I = \int w(u, v^2) / v du,  v = sqrt((p_+^2 - u^2)(u^2 - p_-^2)),
//
// taken over [p0, p_+] (plus segment) or [p_-, p0] (minus segment). The
// segment is split at its midpoint; the half touching p_+ is mapped by
// u = p_+ - r^2 and the rest by u = p_- cosh(t), or by u = p0 e^tau when
// the level has no lower turning point. The minus segment never meets p_+,
// so both of its halves use the cosh map.
// Both maps cancel the inverse square-root singularity exactly, and the
// hyperbolic/logarithmic ones also flatten the 1/u behaviour of orbits that
// hug the homoclinic loop.

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "phase_plane.hpp"
#include "quadrature.hpp"

namespace nlsgraph {

enum class Kernel { one, u_squared, u_fourth, v_kinetic };
enum class Segment { plus, minus };

namespace detail {

/// acosh(1 + delta) without cancellation for small delta.
inline double acosh1p(double delta) { return std::log1p(delta + std::sqrt(delta * (2.0 + delta))); }

inline double kernel_weight(Kernel k, double u, double v2) {
    switch (k) {
        case Kernel::one: return 1.0;
        case Kernel::u_squared: return u * u;
        case Kernel::u_fourth: return u * u * u * u;
        case Kernel::v_kinetic: return v2;
    }
    return 0.0;
}

// u = p_+ - r^2 on [r_lo, r_hi]; du / v = 2 dr / sqrt((p_+ + u)(u^2 - p_-^2)).
template <class W>
double upper_piece(const EnergyLevel& lvl, double r_lo, double r_hi, const W& w, const QuadratureSpec& spec) {
    const double gp = lvl.gap_plus();
    auto f = [&](double r) {
        const double r2 = r * r;
        const double u = lvl.p_plus - r2;
        const double du0 = gp - r2;  // u - p0
        const double lower = du0 * (u + lvl.p0) + lvl.d_minus_sq;  // u^2 - p_-^2
        const double s = (lvl.p_plus + u) * lower;
        return 2.0 * w(u, r2 * s) / std::sqrt(s);
    };
    return adaptive_integrate(f, r_lo, r_hi, spec);
}

// u = p_- cosh(t0 + tau) on tau in [0, tau_hi]; du / v = dt / sqrt(p_+^2 - u^2).
// With from_p_minus the offsets are taken from p_-, otherwise from
// p0 = p_- cosh(t0).
template <class W>
double lower_piece_cosh(const EnergyLevel& lvl, double t0, double tau_hi, bool from_p_minus, const W& w,
                        const QuadratureSpec& spec) {
    const double pm = *lvl.p_minus;
    auto f = [&](double tau) {
        const double t = t0 + tau;
        const double sh = pm * std::sinh(t);
        double u;
        double du0;  // u - p0
        if (from_p_minus) {
            const double s2 = std::sinh(0.5 * t);
            const double du_pm = 2.0 * pm * s2 * s2;
            u = pm + du_pm;
            du0 = du_pm - lvl.gap_minus();
        } else {
            // product form keeps u - p0 exact near tau = 0
            du0 = 2.0 * pm * std::sinh(t0 + 0.5 * tau) * std::sinh(0.5 * tau);
            u = lvl.p0 + du0;
        }
        const double upper = lvl.d_plus_sq - du0 * (u + lvl.p0);  // p_+^2 - u^2
        return w(u, upper * sh * sh) / std::sqrt(upper);
    };
    return adaptive_integrate(f, 0.0, tau_hi, spec);
}

// u = p0 e^tau on [0, tau_hi]; used when E >= 0 (no lower turning point).
template <class W>
double lower_piece_log(const EnergyLevel& lvl, double tau_hi, const W& w, const QuadratureSpec& spec) {
    auto f = [&](double tau) {
        const double du0 = lvl.p0 * std::expm1(tau);
        const double u = lvl.p0 + du0;
        const double upper = lvl.d_plus_sq - du0 * (u + lvl.p0);
        const double v2 = upper * (u * u - lvl.p_minus_sq);
        return w(u, v2) * u / std::sqrt(v2);
    };
    return adaptive_integrate(f, 0.0, tau_hi, spec);
}

}  // namespace detail

/// \int w(u, v^2) / v du over a segment of the level. The weight receives
/// the amplitude u and v^2 evaluated in factorized form.
template <class W>
double level_integral(const EnergyLevel& lvl, Segment seg, const W& w, const QuadratureSpec& spec = {}) {
    validate(spec);
    if (seg == Segment::plus) {
        const double gap = lvl.gap_plus();
        if (!(gap > 0.0)) return 0.0;
        const double half = 0.5 * gap;
        double total = detail::upper_piece(lvl, 0.0, std::sqrt(half), w, spec);
        if (lvl.p_minus) {
            const double pm = *lvl.p_minus;
            const double gm = lvl.gap_minus();
            const double t0 = detail::acosh1p(gm / pm);
            const double t1 = detail::acosh1p((gm + half) / pm);
            total += detail::lower_piece_cosh(lvl, t0, t1 - t0, false, w, spec);
        } else {
            total += detail::lower_piece_log(lvl, std::log1p(half / lvl.p0), w, spec);
        }
        return total;
    }
    if (!lvl.p_minus) {
        throw std::invalid_argument("level_integral: minus segment needs E < 0 (a lower turning point)");
    }
    const double gap = lvl.gap_minus();
    if (!(gap > 0.0)) return 0.0;
    const double half = 0.5 * gap;
    // No turning point at p0, so the cosh map covers the whole segment.
    const double pm = *lvl.p_minus;
    const double t_mid = detail::acosh1p(half / pm);
    const double t_end = detail::acosh1p(gap / pm);
    double total = detail::lower_piece_cosh(lvl, 0.0, t_mid, true, w, spec);
    total += detail::lower_piece_cosh(lvl, t_mid, t_end - t_mid, true, w, spec);
    return total;
}

inline double weighted_level_integral(const EnergyLevel& lvl, Kernel kernel, Segment seg,
                                      const QuadratureSpec& spec = {}) {
    return level_integral(
        lvl, seg, [kernel](double u, double v2) { return detail::kernel_weight(kernel, u, v2); }, spec);
}

/// Half-transit time from p0 up to the upper turning point.
inline double period_T_plus(double p0, double q0, const QuadratureSpec& spec = {}) {
    return weighted_level_integral(energy_level(p0, q0), Kernel::one, Segment::plus, spec);
}

/// Half-transit time from the lower turning point up to p0; needs E < 0.
inline double period_T_minus(double p0, double q0, const QuadratureSpec& spec = {}) {
    const auto lvl = energy_level(p0, q0);
    if (!lvl.p_minus) throw std::invalid_argument("period_T_minus: level has E >= 0, no lower turning point");
    return weighted_level_integral(lvl, Kernel::one, Segment::minus, spec);
}

/// \int (1 - 2u^2) / (u^2 v) du over a segment, the kernel shared by the
/// derivative identities of the period functions.
inline double derivative_kernel_integral(const EnergyLevel& lvl, Segment seg, const QuadratureSpec& spec = {}) {
    return level_integral(lvl, seg, [](double u, double) { return (1.0 - 2.0 * u * u) / (u * u); }, spec);
}

/// dT_+/dq0 from the regularized identity
///   (E + 1/4)/(2 q0) dT_+/dq0 = \int (1-2u^2)/(8 v u^2) du - (1 - 2 p0^2)/(8 p0 q0).
inline double dT_plus_dq0(double p0, double q0, const QuadratureSpec& spec = {}) {
    const auto lvl = energy_level(p0, q0);
    const double kernel = derivative_kernel_integral(lvl, Segment::plus, spec) / 8.0;
    const double c = 1.0 - 2.0 * p0 * p0;
    const double e_shift = 0.25 * (4.0 * q0 * q0 + c * c);  // E + 1/4
    return (2.0 * q0 * kernel - c / (4.0 * p0)) / e_shift;
}

/// dT_-/dq0 from
///   (E + 1/4)/(2 q0) dT_-/dq0 = \int (1-2u^2)/(8 v u^2) du + (1 - 2 p0^2)/(8 p0 q0).
inline double dT_minus_dq0(double p0, double q0, const QuadratureSpec& spec = {}) {
    const auto lvl = energy_level(p0, q0);
    if (!lvl.p_minus) throw std::invalid_argument("dT_minus_dq0: level has E >= 0, no lower turning point");
    const double kernel = derivative_kernel_integral(lvl, Segment::minus, spec) / 8.0;
    const double c = 1.0 - 2.0 * p0 * p0;
    const double e_shift = 0.25 * (4.0 * q0 * q0 + c * c);
    return (2.0 * q0 * kernel + c / (4.0 * p0)) / e_shift;
}

}  // namespace nlsgraph
