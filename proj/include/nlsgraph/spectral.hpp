#pragma once

// Spectrum of the linearization L = -Delta + eps^2 - 6 Phi^2 at the symmetric
// state, in scaled variables: eigenfunctions vanishing on the tail (SP2, a
// Dirichlet problem on one loop) and those with a nonzero tail (SP1, matched
// to the decaying tail solution V0). Also the Laplacian spectrum of the graph.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "bifurcation.hpp"
#include "errors.hpp"
#include "shooting.hpp"
#include "symmetric_state.hpp"

namespace nlsgraph {

struct TailValue {
    double value = 0.0;
    double deriv = 0.0;
};

/// V0(z; lambda) = e^{-k z} g(z) / D with k = sqrt(1 - lambda),
/// g = 3 - lambda + 3k tanh(z + a) - 3 sech^2(z + a), D = 3 - lambda + 3k.
inline TailValue v0_tail(double z, double lambda, double a) {
    if (!(lambda < 1.0)) throw std::invalid_argument("v0_tail: lambda must lie below the continuum edge 1");
    const double k = std::sqrt(1.0 - lambda);
    const double t = std::tanh(z + a);
    const double s2 = 1.0 - t * t;
    const double g = 3.0 - lambda + 3.0 * k * t - 3.0 * s2;
    const double dg = 3.0 * k * s2 + 6.0 * s2 * t;
    const double d = 3.0 - lambda + 3.0 * k;
    const double e = std::exp(-k * z);
    return {e * g / d, e * (dg - k * g) / d};
}

enum class Parity { even, odd };

struct Sp2Shot {
    double v_end = 0.0;
    double dv_end = 0.0;
    int zeros = 0;  ///< sign changes of v on (0, length]
};

using SpectralOrbit = std::array<double, 4>;  // u, u', v, v'

struct SpectralTolerance {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    double lambda_tol = 1e-13;
    double gamma_floor = -25.0;
    int gamma_scan_points = 500;
    double zero_threshold = 1e-8;
};

/// v'' = (1 - 6u^2 - lambda) v along the orbit of level `lvl` started at
/// u(0) = p_plus, u'(0) = 0, integrated to z = length.
inline Sp2Shot sp2_shoot(const EnergyLevel& lvl, double length, double lambda, Parity parity,
                         const SpectralTolerance& tol = {}) {
    auto rhs = [lambda](const SpectralOrbit& x, SpectralOrbit& dx, double) {
        dx[0] = x[1];
        dx[1] = x[0] - 2.0 * x[0] * x[0] * x[0];
        dx[2] = x[3];
        dx[3] = (1.0 - 6.0 * x[0] * x[0] - lambda) * x[2];
    };
    SpectralOrbit x{lvl.p_plus, 0.0, parity == Parity::even ? 1.0 : 0.0, parity == Parity::even ? 0.0 : 1.0};
    auto stepper = ode::make_dense_output(tol.abs_tol, tol.rel_tol, ode::runge_kutta_dopri5<SpectralOrbit>());
    stepper.initialize(x, 0.0, std::min(1e-3, length));
    Sp2Shot out;
    double prev = parity == Parity::even ? 1.0 : 0.0;
    auto note = [&](double v) {
        if (v != 0.0) {
            if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++out.zeros;
            prev = v;
        }
    };
    while (stepper.current_time() < length) {
        const auto [t0, t1] = stepper.do_step(rhs);
        if (t1 >= length) break;
        note(stepper.current_state()[2]);
        (void)t0;
    }
    SpectralOrbit end{};
    stepper.calc_state(length, end);
    out.v_end = end[2];
    out.dv_end = end[3];
    if (end[2] == 0.0) {
        ++out.zeros;
    } else {
        note(end[2]);
    }
    return out;
}

inline double loop_half_length(const SymmetricState& s) { return std::numbers::pi * s.eps; }

/// The (j+1)-th Dirichlet eigenvalue of given parity: smallest lambda whose
/// shooting solution has at least j+1 zeros on (0, length].
inline double sp2_eigenvalue_of_parity(const EnergyLevel& lvl, double length, Parity parity, int j,
                                       const SpectralTolerance& tol = {}) {
    auto enough = [&](double lambda) { return sp2_shoot(lvl, length, lambda, parity, tol).zeros >= j + 1; };
    double lo = -6.0;  // 1 - 6u^2 - lambda >= 1 there, no oscillation
    double hi = 1.0;
    while (!enough(hi)) {
        lo = hi;
        hi = 2.0 * hi + 1.0;
        if (hi > 1e8) throw numerical_error("sp2_eigenvalues: no upper bracket");
    }
    while (hi - lo > tol.lambda_tol * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        (enough(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

/// beta_1, beta_2, ...: odd n from even eigenfunctions, even n from odd ones.
inline std::vector<double> sp2_eigenvalues(const SymmetricState& s, int count, const SpectralTolerance& tol = {}) {
    if (count < 1) throw std::invalid_argument("sp2_eigenvalues: count must be >= 1");
    std::vector<double> out;
    for (int n = 1; n <= count; ++n) {
        const Parity parity = n % 2 == 1 ? Parity::even : Parity::odd;
        out.push_back(sp2_eigenvalue_of_parity(s.level, loop_half_length(s), parity, (n - 1) / 2, tol));
    }
    return out;
}

/// 2N v'(L) V0(0) - v(L) V0'(0) for the even shooting solution.
inline double sp1_matching(const SymmetricState& s, double lambda, const SpectralTolerance& tol = {}) {
    const auto shot = sp2_shoot(s.level, loop_half_length(s), lambda, Parity::even, tol);
    const auto tail = v0_tail(0.0, lambda, s.a);
    return 2.0 * s.n_loops * shot.dv_end * tail.value - shot.v_end * tail.deriv;
}

/// Roots of the matching determinant below the continuum edge, ascending;
/// at most `count` of them (fewer when absent).
inline std::vector<double> sp1_eigenvalues(const SymmetricState& s, int count, const SpectralTolerance& tol = {}) {
    if (count < 1) throw std::invalid_argument("sp1_eigenvalues: count must be >= 1");
    auto m = [&](double lambda) { return sp1_matching(s, lambda, tol); };
    const double lo = tol.gamma_floor;
    const double hi = 1.0 - 1e-6;
    std::vector<double> out;
    double x_prev = lo;
    double m_prev = m(lo);
    for (int i = 1; i < tol.gamma_scan_points && static_cast<int>(out.size()) < count; ++i) {
        const double x = lo + (hi - lo) * i / (tol.gamma_scan_points - 1);
        const double mx = m(x);
        if (m_prev == 0.0) {
            out.push_back(x_prev);
        } else if ((m_prev > 0.0) != (mx > 0.0) && mx != 0.0) {
            out.push_back(detail::bracketed_root(m, x_prev, x, m_prev, mx));
        }
        x_prev = x;
        m_prev = mx;
    }
    return out;
}

struct SpectralEntry {
    std::string kind;  ///< "gamma", "beta_even" (even eigenfunction), "beta_odd"
    int index = 0;     ///< gamma_index or beta_index
    double lambda = 0.0;
    int multiplicity = 0;
};

struct SpectralReport {
    double eps = 0.0;
    int n_loops = 0;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::vector<SpectralEntry> lambda_ordered;
    int morse_n = 0;
    int nullity_z = 0;
};

inline int beta_multiplicity(int index, int n_loops) { return index % 2 == 1 ? n_loops - 1 : n_loops; }

/// Eigenvalues of L with multiplicities: every beta up to the first one
/// clearly above zero (and at least `min_beta`), every gamma below the edge.
inline SpectralReport spectral_report(const SymmetricState& s, int min_beta = 2, int max_gamma = 8,
                                      const SpectralTolerance& tol = {}) {
    SpectralReport r;
    r.eps = s.eps;
    r.n_loops = s.n_loops;
    const double length = loop_half_length(s);
    for (int n = 1;; ++n) {
        const Parity parity = n % 2 == 1 ? Parity::even : Parity::odd;
        r.beta.push_back(sp2_eigenvalue_of_parity(s.level, length, parity, (n - 1) / 2, tol));
        if (n >= min_beta && r.beta.back() > tol.zero_threshold) break;
    }
    r.gamma = sp1_eigenvalues(s, max_gamma, tol);
    for (std::size_t i = 0; i < r.gamma.size(); ++i) {
        r.lambda_ordered.push_back({"gamma", static_cast<int>(i) + 1, r.gamma[i], 1});
    }
    for (std::size_t i = 0; i < r.beta.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        const int mult = beta_multiplicity(n, s.n_loops);
        if (mult == 0) continue;
        r.lambda_ordered.push_back({n % 2 == 1 ? "beta_even" : "beta_odd", n, r.beta[i], mult});
    }
    std::stable_sort(r.lambda_ordered.begin(), r.lambda_ordered.end(),
                     [](const SpectralEntry& x, const SpectralEntry& y) { return x.lambda < y.lambda; });
    for (const auto& e : r.lambda_ordered) {
        if (std::abs(e.lambda) < tol.zero_threshold) {
            r.nullity_z += e.multiplicity;
        } else if (e.lambda < 0.0) {
            r.morse_n += e.multiplicity;
        }
    }
    return r;
}

inline std::pair<int, int> morse_nullity(const SymmetricState& s, const SpectralTolerance& tol = {}) {
    const auto r = spectral_report(s, 2, 8, tol);
    return {r.morse_n, r.nullity_z};
}

/// eps at which beta_1 of the symmetric state changes sign.
inline double find_beta1_crossing(int n, const SpectralTolerance& tol = {}, const QuadratureSpec& spec = {}) {
    detail::check_loops(n);
    auto b1 = [&](double eps) {
        const auto s = solve_symmetric(eps, n, spec);
        return sp2_eigenvalue_of_parity(s.level, loop_half_length(s), Parity::even, 0, tol);
    };
    double lo = 0.05;
    double hi = 1.0;
    double b_lo = b1(lo);
    double b_hi = b1(hi);
    while (b_hi > 0.0 && hi < 6.0) {
        lo = hi;
        b_lo = b_hi;
        hi *= 1.5;
        b_hi = b1(hi);
    }
    if (!(b_lo > 0.0 && b_hi < 0.0)) throw numerical_error("find_beta1_crossing: beta_1 does not change sign");
    std::uintmax_t iters = 200;
    auto stop = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); };
    const auto r = boost::math::tools::toms748_solve(b1, lo, hi, b_lo, b_hi, stop, iters);
    return 0.5 * (r.first + r.second);
}

struct LaplacianSpectrum {
    std::vector<std::pair<double, int>> eigenvalues;  ///< (lambda, multiplicity), ascending
    bool no_negative_eigenvalue = false;
};

/// 2N tanh(pi sqrt|lambda|) + 1 > 0 on a grid of lambda in [-100, 0).
inline bool laplacian_negative_check(int n, int grid = 2000) {
    for (int i = 0; i < grid; ++i) {
        const double lambda = -100.0 + 100.0 * i / grid;
        if (!(2.0 * n * std::tanh(std::numbers::pi * std::sqrt(std::abs(lambda))) + 1.0 > 0.0)) return false;
    }
    return true;
}

/// Embedded eigenvalues n^2 (multiplicity N) and (n - 1/2)^2 (multiplicity N - 1).
inline LaplacianSpectrum laplacian_spectrum(int n, int n_max) {
    if (n < 1) throw std::invalid_argument("laplacian_spectrum: N must be >= 1");
    if (n_max < 1) throw std::invalid_argument("laplacian_spectrum: n_max must be >= 1");
    LaplacianSpectrum out;
    for (int j = 1; j <= n_max; ++j) {
        const double half = j - 0.5;
        if (n > 1) out.eigenvalues.emplace_back(half * half, n - 1);
        out.eigenvalues.emplace_back(static_cast<double>(j) * j, n);
    }
    out.no_negative_eigenvalue = laplacian_negative_check(n);
    return out;
}

}  // namespace nlsgraph
