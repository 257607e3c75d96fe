#pragma once

// Direct integration of u'' = u - 2u^3. Used as the independent oracle for
// the period quadrature and as the profile/eigenfunction integrator.

#include <array>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "errors.hpp"
#include "phase_plane.hpp"

namespace nlsgraph {

namespace ode = boost::numeric::odeint;

using Orbit = std::array<double, 2>;

inline void orbit_rhs(const Orbit& x, Orbit& dx, double /*z*/) {
    dx[0] = x[1];
    dx[1] = x[0] - 2.0 * x[0] * x[0] * x[0];
}

struct ShootTolerance {
    double abs_tol = 1e-14;
    double rel_tol = 1e-13;
    double z_max = 1e4;
};

enum class Branch { plus, minus };

struct ShootResult {
    double duration = 0.0;  ///< elapsed z until u' = 0
    double drift = 0.0;     ///< max |E(u, u') - E| over accepted steps
};

/// Integrates from (p0, +q0) (plus) or (p0, -q0) (minus) until u' vanishes,
/// locating the event by bisection on the sign of u' over the dense output.
inline ShootResult shoot_to_turning_point(double p0, double q0, Branch branch, const ShootTolerance& tol = {}) {
    const double level = invariant(p0, q0);
    const double dir = branch == Branch::plus ? 1.0 : -1.0;
    const double accel = p0 - 2.0 * p0 * p0 * p0;
    if (q0 == 0.0 && accel * dir <= 0.0) {
        return {0.0, 0.0};  // already at the turning point on this side
    }
    if (branch == Branch::minus && level >= 0.0) {
        throw std::invalid_argument("shoot_to_turning_point: minus branch needs E < 0");
    }

    auto stepper = ode::make_dense_output(tol.abs_tol, tol.rel_tol, ode::runge_kutta_dopri5<Orbit>());
    Orbit x{p0, dir * q0};
    stepper.initialize(x, 0.0, 1e-3);

    ShootResult out;
    // Moving in the branch direction means dir * u' > 0, except at the very
    // start when q0 = 0 and the acceleration sets the direction.
    auto moving = [&](const Orbit& s) { return dir * s[1] > 0.0; };
    bool started = q0 > 0.0;
    while (true) {
        const auto [t_old, t_new] = stepper.do_step(orbit_rhs);
        const Orbit& cur = stepper.current_state();
        out.drift = std::max(out.drift, std::abs(invariant(cur[0], cur[1]) - level));
        if (!started) {
            if (moving(cur)) started = true;
            if (t_new > tol.z_max) throw numerical_error("shoot_to_turning_point: orbit never starts moving");
            continue;
        }
        if (!moving(cur)) {
            double lo = t_old;
            double hi = t_new;
            Orbit probe;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                stepper.calc_state(mid, probe);
                (moving(probe) ? lo : hi) = mid;
            }
            out.duration = 0.5 * (lo + hi);
            return out;
        }
        if (t_new > tol.z_max) {
            throw numerical_error("shoot_to_turning_point: no turning point before z_max (diverging orbit)");
        }
    }
}

/// Shooting estimate of T_+ (plus) or T_- (minus).
inline double oracle_period_shoot(double p0, double q0, Branch branch, const ShootTolerance& tol = {}) {
    return shoot_to_turning_point(p0, q0, branch, tol).duration;
}

}  // namespace nlsgraph
