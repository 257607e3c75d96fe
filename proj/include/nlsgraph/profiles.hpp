#pragma once

// Sampled edge profiles: each loop component integrated outward from its
// interior extremum, the tail written in closed form.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "errors.hpp"
#include "ksplit_states.hpp"
#include "observables.hpp"
#include "shooting.hpp"
#include "symmetric_state.hpp"

namespace nlsgraph {

struct EdgeSamples {
    std::vector<double> z;
    std::vector<double> u;
    std::vector<double> v;  ///< u'
};

struct WaveProfile {
    double eps = 0.0;
    double p0 = 0.0;
    double a = 0.0;
    std::vector<EdgeSamples> loops;  ///< one per loop, z in [-pi eps, pi eps]
    EdgeSamples tail;                ///< z in [0, a + 40]
    std::vector<ComponentType> component_types;
    double invariant_drift = 0.0;
};

struct ProfileTolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double max_drift = 1e-9;
    double tail_extent = 40.0;
};

namespace detail {

/// Even solution of u'' = u - 2u^3 through (start, 0) sampled at |z_i|.
inline EdgeSamples integrate_component(double start, double level, const std::vector<double>& zs,
                                       const ProfileTolerance& tol, double& drift) {
    std::vector<double> abs_z(zs.size());
    std::transform(zs.begin(), zs.end(), abs_z.begin(), [](double z) { return std::abs(z); });
    std::vector<std::size_t> order(zs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return abs_z[i] < abs_z[j]; });

    EdgeSamples out;
    out.z = zs;
    out.u.assign(zs.size(), 0.0);
    out.v.assign(zs.size(), 0.0);

    auto stepper = ode::make_dense_output(tol.abs_tol, tol.rel_tol, ode::runge_kutta_dopri5<Orbit>());
    Orbit x{start, 0.0};
    stepper.initialize(x, 0.0, 1e-3);
    Orbit probe{};
    for (std::size_t idx : order) {
        const double target = abs_z[idx];
        while (stepper.current_time() < target) {
            stepper.do_step(orbit_rhs);
            const Orbit& cur = stepper.current_state();
            drift = std::max(drift, std::abs(invariant(cur[0], cur[1]) - level));
        }
        if (target == 0.0) {
            probe = {start, 0.0};
        } else {
            stepper.calc_state(target, probe);
        }
        drift = std::max(drift, std::abs(invariant(probe[0], probe[1]) - level));
        out.u[idx] = probe[0];
        out.v[idx] = zs[idx] < 0.0 ? -probe[1] : probe[1];
    }
    return out;
}

inline std::vector<double> uniform_grid(double lo, double hi, int samples) {
    std::vector<double> z(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) z[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    z.back() = hi;
    return z;
}

inline EdgeSamples tail_samples(double a, int samples, double extent) {
    EdgeSamples t;
    t.z = uniform_grid(0.0, a + extent, samples);
    for (double z : t.z) {
        const double s = 1.0 / std::cosh(z + a);
        t.u.push_back(s);
        t.v.push_back(-s * std::tanh(z + a));
    }
    return t;
}

inline WaveProfile assemble_profile(double eps, double p0, double a, const std::vector<EnergyLevel>& levels,
                                    const std::vector<ComponentType>& types, int samples,
                                    const ProfileTolerance& tol) {
    if (samples < 2) throw std::invalid_argument("reconstruct_profile: samples must be >= 2");
    WaveProfile w;
    w.eps = eps;
    w.p0 = p0;
    w.a = a;
    w.component_types = types;
    const double half = std::numbers::pi * eps;
    const auto zs = uniform_grid(-half, half, samples);
    // Components with the same type and level are identical; integrate each once.
    for (std::size_t j = 0; j < types.size(); ++j) {
        std::size_t src = j;
        for (std::size_t i = 0; i < j; ++i) {
            if (types[i] == types[j] && levels[i].E == levels[j].E) {
                src = i;
                break;
            }
        }
        if (src != j) {
            w.loops.push_back(w.loops[src]);
            continue;
        }
        const auto& lvl = levels[j];
        const double start = types[j] == ComponentType::plus_type ? lvl.p_plus : *lvl.p_minus;
        w.loops.push_back(integrate_component(start, lvl.E, zs, tol, w.invariant_drift));
    }
    w.tail = tail_samples(a, samples, tol.tail_extent);
    if (w.invariant_drift > tol.max_drift) {
        throw numerical_error("reconstruct_profile: invariant drift exceeds tolerance");
    }
    return w;
}

}  // namespace detail

inline WaveProfile reconstruct_profile(const SymmetricState& s, int samples, const ProfileTolerance& tol = {}) {
    const std::vector<EnergyLevel> levels(static_cast<std::size_t>(s.n_loops), s.level);
    const std::vector<ComponentType> types(static_cast<std::size_t>(s.n_loops), ComponentType::plus_type);
    return detail::assemble_profile(s.eps, s.p0, s.a, levels, types, samples, tol);
}

inline WaveProfile reconstruct_profile(const KSplitState& s, int samples, const ProfileTolerance& tol = {}) {
    std::vector<EnergyLevel> levels;
    const auto types = s.component_types();
    for (int j = 0; j < s.n_loops; ++j) levels.push_back(j < s.k_big ? s.big_level() : s.small_level());
    return detail::assemble_profile(s.eps, s.p0, s.a, levels, types, samples, tol);
}

inline double energy_of_state(const SymmetricState& s, const QuadratureSpec& spec = {}) {
    return energy_symmetric(s, spec);
}

inline double energy_of_state(const KSplitState& s, const QuadratureSpec& spec = {}) {
    return energy_ksplit(s, spec);
}

namespace detail {

template <class F>
double trapezoid(const EdgeSamples& e, F f) {
    double sum = 0.0;
    for (std::size_t i = 1; i < e.z.size(); ++i) {
        sum += 0.5 * (e.z[i] - e.z[i - 1]) * (f(e.u[i], e.v[i]) + f(e.u[i - 1], e.v[i - 1]));
    }
    return sum;
}

}  // namespace detail

/// Mass and energy by trapezoid sums over the sampled profile, scaled back
/// to the original variables (mu = eps \int u^2, eta = eps^3 \int (u'^2 - u^4)).
inline std::pair<double, double> sampled_mass_energy(const WaveProfile& w) {
    auto m = [](double u, double) { return u * u; };
    auto e = [](double u, double v) { return v * v - u * u * u * u; };
    double mass = detail::trapezoid(w.tail, m);
    double energy = detail::trapezoid(w.tail, e);
    for (const auto& loop : w.loops) {
        mass += detail::trapezoid(loop, m);
        energy += detail::trapezoid(loop, e);
    }
    return {w.eps * mass, w.eps * w.eps * w.eps * energy};
}

}  // namespace nlsgraph
