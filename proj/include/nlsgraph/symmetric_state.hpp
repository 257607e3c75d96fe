#pragma once

// The N-fold symmetric single-lobe state: T_+(p0, sqrt(A(p0))/(2N)) = pi eps.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "errors.hpp"
#include "levelcurve.hpp"
#include "observables.hpp"
#include "phase_plane.hpp"

namespace nlsgraph {

struct SymmetricState {
    int n_loops = 1;
    double eps = 0.0;
    double omega = 0.0;  ///< -eps^2
    double p0 = 0.0;
    double a = 0.0;      ///< p0 = sech(a)
    double q0 = 0.0;
    EnergyLevel level{};
    double mass = 0.0;
    double energy = 0.0;
};

namespace detail {

inline void check_loops(int n) {
    if (n < 1) throw std::invalid_argument("loop count N must be >= 1");
}

inline void check_amplitude(double p0) {
    if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("vertex amplitude p0 must lie in (0, 1)");
}

/// Root of a monotone function on a sign-changing bracket, to a few ulps in x.
template <class F>
double bracketed_root(F f, double lo, double hi, double f_lo, double f_hi) {
    std::uintmax_t iters = 300;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace detail

inline double symmetric_slope(double p0, int n) { return std::sqrt(potential(p0)) / (2.0 * n); }

/// T_+ along the symmetric boundary curve q0 = sqrt(A(p0))/(2N).
inline double script_T(double p0, int n, const QuadratureSpec& spec = {}) {
    detail::check_amplitude(p0);
    detail::check_loops(n);
    return period_T_plus(p0, symmetric_slope(p0, n), spec);
}

/// d script_T / d p0 from
///   [E0 + 1/4] T' = -(1/4)/(4N^2 q0) - (A'(p0)/8)(1 - 1/(4N^2)) \int (1-2u^2)/(u^2 v) du.
inline double dscript_T_dp0(double p0, int n, const QuadratureSpec& spec = {}) {
    detail::check_amplitude(p0);
    detail::check_loops(n);
    const double q0 = symmetric_slope(p0, n);
    const auto lvl = energy_level(p0, q0);
    const double inv4n2 = 1.0 / (4.0 * n * n);
    const double kernel = derivative_kernel_integral(lvl, Segment::plus, spec);
    const double c = 1.0 - 2.0 * p0 * p0;
    const double e_shift = q0 * q0 + 0.25 * c * c;  // E0 + 1/4
    const double rhs = -0.25 * inv4n2 / q0 - potential_deriv(p0) / 8.0 * (1.0 - inv4n2) * kernel;
    return rhs / e_shift;
}

inline double mass_symmetric(const SymmetricState& s, const QuadratureSpec& spec = {}) {
    const double loops = s.n_loops * loop_mass_integral(s.level, Segment::plus, spec);
    return s.eps * (loops + tail_mass(s.a));
}

inline double energy_symmetric(const SymmetricState& s, const QuadratureSpec& spec = {}) {
    const double loops = s.n_loops * loop_energy_integral(s.level, Segment::plus, spec);
    return s.eps * s.eps * s.eps * (loops + tail_energy(s.a));
}

/// Builds the state sitting at vertex amplitude p0; eps follows from the period.
inline SymmetricState symmetric_from_p0(double p0, int n, const QuadratureSpec& spec = {}) {
    detail::check_amplitude(p0);
    detail::check_loops(n);
    SymmetricState s;
    s.n_loops = n;
    s.p0 = p0;
    s.q0 = symmetric_slope(p0, n);
    s.level = energy_level(p0, s.q0);
    s.a = tail_shift(p0);
    s.eps = period_T_plus(p0, s.q0, spec) / std::numbers::pi;
    s.omega = -s.eps * s.eps;
    s.mass = mass_symmetric(s, spec);
    s.energy = energy_symmetric(s, spec);
    return s;
}

inline constexpr double symmetric_p0_min = 1e-8;
inline constexpr double symmetric_p0_max = 1.0 - 1e-10;

/// The unique symmetric state with scaling eps (script_T is strictly decreasing).
inline SymmetricState solve_symmetric(double eps, int n, const QuadratureSpec& spec = {}) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("solve_symmetric: eps must be positive");
    detail::check_loops(n);
    const double target = std::numbers::pi * eps;
    auto f = [&](double p0) { return script_T(p0, n, spec) - target; };
    const double f_lo = f(symmetric_p0_min);
    const double f_hi = f(symmetric_p0_max);
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
        throw numerical_error("solve_symmetric: eps = " + std::to_string(eps) +
                              " is outside the range reachable for p0 in [1e-8, 1 - 1e-10]");
    }
    const double p0 = detail::bracketed_root(f, symmetric_p0_min, symmetric_p0_max, f_lo, f_hi);
    auto s = symmetric_from_p0(p0, n, spec);
    s.eps = eps;
    s.omega = -eps * eps;
    s.mass = mass_symmetric(s, spec);
    s.energy = energy_symmetric(s, spec);
    return s;
}

inline SymmetricState solve_symmetric_omega(double omega, int n, const QuadratureSpec& spec = {}) {
    if (!(omega < 0.0)) throw std::invalid_argument("solve_symmetric_omega: omega must be negative");
    return solve_symmetric(std::sqrt(-omega), n, spec);
}

/// The symmetric state of prescribed mass; mu is strictly decreasing in p0.
inline SymmetricState solve_symmetric_mass(double mu, int n, const QuadratureSpec& spec = {}) {
    if (!(mu > 0.0)) throw std::invalid_argument("solve_symmetric_mass: mass must be positive");
    detail::check_loops(n);
    auto f = [&](double p0) { return symmetric_from_p0(p0, n, spec).mass - mu; };
    const double lo = symmetric_p0_min;
    const double hi = symmetric_p0_max;
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
        throw numerical_error("solve_symmetric_mass: mass " + std::to_string(mu) + " is outside the reachable range");
    }
    return symmetric_from_p0(detail::bracketed_root(f, lo, hi, f_lo, f_hi), n, spec);
}

}  // namespace nlsgraph
