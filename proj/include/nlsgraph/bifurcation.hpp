#pragma once

// Symmetry-breaking bifurcation of the symmetric branch and diagram tracing.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "critical_curve.hpp"
#include "errors.hpp"
#include "ksplit_states.hpp"
#include "levelcurve.hpp"
#include "symmetric_state.hpp"

namespace nlsgraph {

struct BifurcationReport {
    int n_loops = 2;
    double p_bif = 0.0;
    double eps_star = 0.0;
    double omega_star = 0.0;
    double mu_star = 0.0;
    double p_star_star = 0.0;
};

/// F(p0) = p0^2 (2p0^2 - 1) - q0 p0^3 \int (2u^2 - 1)/(v u^2) du on the
/// symmetric curve; its zero is where that curve meets C1.
inline double bifurcation_function(double p0, int n, const QuadratureSpec& spec = {}) {
    detail::check_amplitude(p0);
    detail::check_loops(n);
    const double q0 = symmetric_slope(p0, n);
    const auto lvl = energy_level(p0, q0);
    const double kernel = -derivative_kernel_integral(lvl, Segment::plus, spec);
    return p0 * p0 * (2.0 * p0 * p0 - 1.0) - q0 * p0 * p0 * p0 * kernel;
}

inline constexpr int bifurcation_scan_points = 200;

/// Empty for N = 1, where the symmetric branch never bifurcates.
inline std::optional<BifurcationReport> find_bifurcation(int n, const QuadratureSpec& spec = {}) {
    detail::check_loops(n);
    if (n == 1) return std::nullopt;
    BifurcationReport r;
    r.n_loops = n;
    r.p_star_star = find_p_star_star(spec);
    auto f = [&](double p0) { return bifurcation_function(p0, n, spec); };
    const double lo = p_star + 1e-9;
    const double hi = r.p_star_star;
    double x_prev = lo;
    double f_prev = f(lo);
    bool found = false;
    for (int i = 1; i < bifurcation_scan_points && !found; ++i) {
        const double x = lo + (hi - lo) * i / (bifurcation_scan_points - 1);
        const double fx = f(x);
        if ((f_prev > 0.0) != (fx > 0.0)) {
            r.p_bif = detail::bracketed_root(f, x_prev, x, f_prev, fx);
            found = true;
        }
        x_prev = x;
        f_prev = fx;
    }
    if (!found) throw numerical_error("find_bifurcation: no sign change of F on (p_*, p_**)");
    const auto s = symmetric_from_p0(r.p_bif, n, spec);
    r.eps_star = s.eps;
    r.omega_star = s.omega;
    r.mu_star = s.mass;
    return r;
}

struct DiagramRow {
    std::string branch;  ///< "symmetric" or "ksplit"
    int k = 0;
    int n = 0;
    double omega = 0.0;
    double eps = 0.0;
    double p0 = 0.0;
    double mass = 0.0;
    double energy = 0.0;

    bool is_gap() const { return std::isnan(eps); }
};

namespace detail {

inline DiagramRow gap_row(const std::string& branch, int k, int n, double p0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {branch, k, n, nan, nan, p0, nan, nan};
}

/// p0 = 1/(1 + e^s) on a uniform s grid: log-dense near both 0 and 1.
inline std::vector<double> logistic_grid(int points, double s_max) {
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        const double s = -s_max + 2.0 * s_max * i / std::max(1, points - 1);
        out.push_back(1.0 / (1.0 + std::exp(s)));
    }
    return out;
}

/// Grid on (lo, hi) that is log-dense near lo.
inline std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / std::max(1, points - 1)));
    }
    return out;
}

}  // namespace detail

/// Symmetric branch swept in p0 and each K-split branch swept across both
/// regimes; rows sorted by branch, K, then p0. Failed points become NaN rows.
inline std::vector<DiagramRow> trace_diagram(int n, const std::vector<int>& k_set, int points,
                                             const QuadratureSpec& spec = {}) {
    detail::check_loops(n);
    if (points < 2) throw std::invalid_argument("trace_diagram: points must be >= 2");
    std::vector<DiagramRow> rows;
    for (double p0 : detail::logistic_grid(points, 12.0)) {
        try {
            const auto s = symmetric_from_p0(p0, n, spec);
            rows.push_back({"symmetric", n, n, s.omega, s.eps, s.p0, s.mass, s.energy});
        } catch (const std::exception&) {
            rows.push_back(detail::gap_row("symmetric", n, n, p0));
        }
    }
    if (!k_set.empty() && n >= 2) {
        const double pss = find_p_star_star(spec);
        const int half = std::max(2, points / 2);
        // opposite regime toward p0 -> 0, same regime up to p_**
        const auto opposite = detail::log_grid(1e-6, p_star * (1.0 - 1e-6), half);
        // same-type states crowd just above p_*, so space (p0 - p_*) logarithmically
        std::vector<double> same;
        for (double t : detail::log_grid(1e-4, 1.0 - 1e-6, half)) same.push_back(p_star + (pss - p_star) * t);
        for (int k : k_set) {
            detail::check_split(n, k);
            for (double p0 : opposite) {
                try {
                    const auto s = solve_ksplit_opposite(p0, n, k, spec);
                    rows.push_back({"ksplit", k, n, s.omega, s.eps, s.p0, s.mass, s.energy});
                } catch (const std::exception&) {
                    rows.push_back(detail::gap_row("ksplit", k, n, p0));
                }
            }
            for (double p0 : same) {
                try {
                    for (const auto& s : solve_ksplit_same(p0, n, k, spec)) {
                        rows.push_back({"ksplit", k, n, s.omega, s.eps, s.p0, s.mass, s.energy});
                    }
                } catch (const std::exception&) {
                    rows.push_back(detail::gap_row("ksplit", k, n, p0));
                }
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const DiagramRow& x, const DiagramRow& y) {
        return std::tie(x.branch, x.k, x.p0) < std::tie(y.branch, y.k, y.p0);
    });
    return rows;
}

}  // namespace nlsgraph
