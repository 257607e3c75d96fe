#pragma once

// Asymmetric single-lobe states with K large loop components (slope q_big)
// and N-K small ones (slope q_small). For p0 < p_* the small components are
// of minus type (opposite regime), for p0 in (p_*, p_**) both are of plus
// type (same regime).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "critical_curve.hpp"
#include "errors.hpp"
#include "levelcurve.hpp"
#include "observables.hpp"
#include "phase_plane.hpp"
#include "symmetric_state.hpp"

namespace nlsgraph {

enum class Regime { opposite, same };
enum class ComponentType { plus_type, minus_type };

struct KSplitState {
    int n_loops = 2;
    int k_big = 1;
    Regime regime = Regime::opposite;
    double p0 = 0.0;
    double a = 0.0;
    double q_big = 0.0;
    double q_small = 0.0;
    double small_deficit = 0.0;  ///< sqrt(A(p0)) - q_small, kept exactly in the opposite regime
    double eps = 0.0;
    double omega = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    bool outside_proven_region = false;  ///< same regime with p0 >= p_**

    ComponentType big_type() const { return ComponentType::plus_type; }
    ComponentType small_type() const {
        return regime == Regime::opposite ? ComponentType::minus_type : ComponentType::plus_type;
    }
    std::vector<ComponentType> component_types() const {
        std::vector<ComponentType> out(static_cast<std::size_t>(k_big), big_type());
        out.resize(static_cast<std::size_t>(n_loops), small_type());
        return out;
    }
    Segment small_segment() const { return regime == Regime::opposite ? Segment::minus : Segment::plus; }

    EnergyLevel big_level() const { return energy_level(p0, q_big); }
    EnergyLevel small_level() const {
        if (regime == Regime::opposite && small_deficit > 0.0) return energy_level_below_homoclinic(p0, small_deficit);
        return energy_level(p0, q_small);
    }
};

namespace detail {

inline void check_split(int n, int k) {
    check_loops(n);
    if (k < 1 || k > n - 1) throw std::invalid_argument("K must lie in {1, ..., N-1}");
}

}  // namespace detail

/// Slope of the small components fixed by the flux condition
/// 2K q1 - 2(N-K) qN = sqrt(A(p0)).
inline double q_small_from_q_big(double q1, double p0, int n, int k) {
    detail::check_amplitude(p0);
    detail::check_split(n, k);
    const double root_a = std::sqrt(potential(p0));
    const double lo = root_a / (2.0 * k);
    if (q1 < lo * (1.0 - 1e-14)) throw std::invalid_argument("q_small_from_q_big: q1 below sqrt(A(p0))/(2K)");
    return std::max(0.0, (k * q1 - 0.5 * root_a) / (n - k));
}

inline double mass_ksplit(const KSplitState& s, const QuadratureSpec& spec = {}) {
    const double big = loop_mass_integral(s.big_level(), Segment::plus, spec);
    double small = 0.0;
    if (s.n_loops > s.k_big) {
        small = loop_mass_integral(s.small_level(), s.small_segment(), spec);
    }
    return s.eps * (s.k_big * big + (s.n_loops - s.k_big) * small + tail_mass(s.a));
}

inline double energy_ksplit(const KSplitState& s, const QuadratureSpec& spec = {}) {
    const double big = loop_energy_integral(s.big_level(), Segment::plus, spec);
    double small = 0.0;
    if (s.n_loops > s.k_big) {
        small = loop_energy_integral(s.small_level(), s.small_segment(), spec);
    }
    const double e3 = s.eps * s.eps * s.eps;
    return e3 * (s.k_big * big + (s.n_loops - s.k_big) * small + tail_energy(s.a));
}

/// The symmetric state viewed as the K = N member of the family.
inline KSplitState ksplit_from_symmetric(const SymmetricState& sym) {
    KSplitState s;
    s.n_loops = sym.n_loops;
    s.k_big = sym.n_loops;
    s.regime = sym.p0 < p_star ? Regime::opposite : Regime::same;
    s.p0 = sym.p0;
    s.a = sym.a;
    s.q_big = s.q_small = sym.q0;
    s.eps = sym.eps;
    s.omega = sym.omega;
    s.mass = sym.mass;
    s.energy = sym.energy;
    return s;
}

namespace detail {

inline KSplitState finish_ksplit(KSplitState s, const QuadratureSpec& spec) {
    s.a = tail_shift(s.p0);
    s.eps = period_T_plus(s.p0, s.q_big, spec) / std::numbers::pi;
    s.omega = -s.eps * s.eps;
    s.mass = mass_ksplit(s, spec);
    s.energy = energy_ksplit(s, spec);
    return s;
}

}  // namespace detail

/// F(q1) = T_+(p0, q1) - T_-(p0, qN(q1)), decreasing on the admissible interval.
inline double opposite_mismatch(double q1, double p0, int n, int k, const QuadratureSpec& spec = {}) {
    const double qn = q_small_from_q_big(q1, p0, n, k);
    return period_T_plus(p0, q1, spec) - period_T_minus(p0, qn, spec);
}

/// Admissible interval for q1: qN runs from 0 to the homoclinic value sqrt(A(p0)).
inline std::pair<double, double> opposite_interval(double p0, int n, int k) {
    const double root_a = std::sqrt(potential(p0));
    return {root_a / (2.0 * k), (2.0 * (n - k) + 1.0) * root_a / (2.0 * k)};
}

namespace detail {

// The root sits within O(p0^2) of the right end of the interval, so the
// small components are parameterized by d = sqrt(A(p0)) - qN instead of q1.
inline double opposite_mismatch_deficit(double d, double p0, int n, int k, const QuadratureSpec& spec) {
    const double root_a = std::sqrt(potential(p0));
    const double q1 = ((2.0 * (n - k) + 1.0) * root_a - 2.0 * (n - k) * d) / (2.0 * k);
    const auto small = energy_level_below_homoclinic(p0, d);
    return period_T_plus(p0, q1, spec) - weighted_level_integral(small, Kernel::one, Segment::minus, spec);
}

}  // namespace detail

/// The unique K-split state of opposite type at vertex amplitude p0 < p_*.
inline KSplitState solve_ksplit_opposite(double p0, int n, int k, const QuadratureSpec& spec = {}) {
    detail::check_split(n, k);
    if (!(p0 > 0.0 && p0 < p_star)) throw std::invalid_argument("solve_ksplit_opposite: p0 must lie in (0, p_*)");
    const double root_a = std::sqrt(potential(p0));
    auto f = [&](double d) { return detail::opposite_mismatch_deficit(d, p0, n, k, spec); };
    // d = sqrt(A) is qN = 0 where T_- vanishes; T_- diverges like log(1/d) as d -> 0.
    const double d_hi = root_a;
    const double f_hi = f(d_hi);
    double d_lo = 0.5 * root_a;
    double f_lo = f(d_lo);
    while (f_lo >= 0.0 && d_lo > 1e-290) {
        d_lo *= 1e-3;
        f_lo = f(d_lo);
    }
    if (!(f_lo < 0.0 && f_hi > 0.0)) throw numerical_error("solve_ksplit_opposite: period mismatch not bracketed");
    const double d = detail::bracketed_root(f, d_lo, d_hi, f_lo, f_hi);
    KSplitState s;
    s.n_loops = n;
    s.k_big = k;
    s.regime = Regime::opposite;
    s.p0 = p0;
    s.small_deficit = d;
    s.q_small = root_a - d;
    s.q_big = ((2.0 * (n - k) + 1.0) * root_a - 2.0 * (n - k) * d) / (2.0 * k);
    return detail::finish_ksplit(s, spec);
}

namespace detail {

inline double match_q_big_unchecked(double p0, double qn, double qm, const QuadratureSpec& spec) {
    const double target = period_T_plus(p0, qn, spec);
    auto g = [&](double q) { return period_T_plus(p0, q, spec) - target; };
    const double g_lo = g(qm);
    if (!(g_lo > 0.0)) return qm;  // qN at the crest to within rounding
    double hi = 2.0 * qm;
    double g_hi = g(hi);
    for (int j = 0; j < 200 && g_hi >= 0.0; ++j) {
        hi *= 2.0;
        g_hi = g(hi);
    }
    if (g_hi >= 0.0) throw numerical_error("match_q_big: T_+ does not fall below the target");
    return bracketed_root(g, qm, hi, g_lo, g_hi);
}

}  // namespace detail

/// The q1 > q_max(p0) with T_+(p0, q1) = T_+(p0, qN).
inline double match_q_big(double p0, double qn, const QuadratureSpec& spec = {}) {
    const double qm = q_max(p0, spec);
    if (!(qn > 0.0 && qn < qm)) throw std::invalid_argument("match_q_big: qN must lie in (0, q_max(p0))");
    return detail::match_q_big_unchecked(p0, qn, qm, spec);
}

/// K q1(qN) + (N-K) qN - sqrt(A(p0))/2 over qN in (0, q_max).
inline double same_flux_residual(double qn, double p0, int n, int k, double qm, const QuadratureSpec& spec = {}) {
    const double q1 = detail::match_q_big_unchecked(p0, qn, qm, spec);
    return k * q1 + (n - k) * qn - 0.5 * std::sqrt(potential(p0));
}

inline constexpr int same_regime_scan_points = 400;

/// All K-split states of same type at vertex amplitude p0 in (p_*, 1); each
/// state is flagged when p0 lies beyond p_**.
inline std::vector<KSplitState> solve_ksplit_same(double p0, int n, int k, const QuadratureSpec& spec = {}) {
    detail::check_split(n, k);
    if (!(p0 > p_star && p0 < 1.0)) throw std::invalid_argument("solve_ksplit_same: p0 must lie in (p_*, 1)");
    const double qm = q_max_unchecked(p0, spec);
    const bool outside = !(qm < std::sqrt(potential(p0)));
    auto f = [&](double qn) { return same_flux_residual(qn, p0, n, k, qm, spec); };

    const double lo = 1e-6 * qm;
    const double hi = qm * (1.0 - 1e-6);
    std::vector<KSplitState> out;
    double x_prev = lo;
    double f_prev = f(lo);
    for (int i = 1; i < same_regime_scan_points; ++i) {
        const double x = lo + (hi - lo) * i / (same_regime_scan_points - 1);
        const double fx = f(x);
        if ((f_prev > 0.0) != (fx > 0.0)) {
            KSplitState s;
            s.n_loops = n;
            s.k_big = k;
            s.regime = Regime::same;
            s.p0 = p0;
            s.outside_proven_region = outside;
            s.q_small = detail::bracketed_root(f, x_prev, x, f_prev, fx);
            s.q_big = detail::match_q_big_unchecked(p0, s.q_small, qm, spec);
            out.push_back(detail::finish_ksplit(s, spec));
        }
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

/// Residuals of the defining system: (period mismatch, flux mismatch).
inline std::pair<double, double> ksplit_residuals(const KSplitState& s, const QuadratureSpec& spec = {}) {
    const double t_big = period_T_plus(s.p0, s.q_big, spec);
    const double t_small = weighted_level_integral(s.small_level(), Kernel::one, s.small_segment(), spec);
    const double sign = s.regime == Regime::opposite ? -1.0 : 1.0;
    const double flux = 2.0 * s.k_big * s.q_big + sign * 2.0 * (s.n_loops - s.k_big) * s.q_small -
                        std::sqrt(potential(s.p0));
    return {t_big - t_small, flux};
}

/// Opposite-regime state with prescribed eps, on the branch continued from
/// p0 -> 0 (the smallest p0 whose matched period equals pi eps).
inline KSplitState solve_ksplit_opposite_eps(double eps, int n, int k, const QuadratureSpec& spec = {}) {
    if (!(eps > 0.0)) throw std::invalid_argument("solve_ksplit_opposite_eps: eps must be positive");
    detail::check_split(n, k);
    auto g = [&](double p0) { return solve_ksplit_opposite(p0, n, k, spec).eps - eps; };
    const double log_lo = std::log(1e-60);
    const double log_hi = std::log(p_star * (1.0 - 1e-6));
    const int points = 120;
    double x_prev = std::exp(log_lo);
    double g_prev = g(x_prev);
    if (!(g_prev > 0.0)) throw numerical_error("solve_ksplit_opposite_eps: eps too large for the p0 range");
    for (int i = 1; i < points; ++i) {
        const double x = std::exp(log_lo + (log_hi - log_lo) * i / (points - 1));
        const double gx = g(x);
        if (gx <= 0.0) {
            const double p0 = detail::bracketed_root(g, x_prev, x, g_prev, gx);
            auto s = solve_ksplit_opposite(p0, n, k, spec);
            return s;
        }
        x_prev = x;
        g_prev = gx;
    }
    throw numerical_error("solve_ksplit_opposite_eps: eps not reached on the opposite branch");
}

}  // namespace nlsgraph
