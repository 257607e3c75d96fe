#pragma once

// Closed forms on the half-line tail u0(z) = sech(z + a) and the per-loop
// mass/energy integrals expressed along level curves.

#include <cmath>

#include "levelcurve.hpp"

namespace nlsgraph {

/// a = arcsech(p0) for p0 in (0, 1), written so that p0 -> 1 keeps precision.
inline double tail_shift(double p0) {
    const double s = std::sqrt((1.0 - p0) * (1.0 + p0));
    return std::log1p((1.0 - p0 + s) / p0);
}

/// \int_0^\infty sech^2(z + a) dz.
inline double tail_mass(double a) { return 1.0 - std::tanh(a); }

/// \int_0^\infty (u0'^2 - u0^4) dz for u0 = sech(z + a).
inline double tail_energy(double a) {
    const double t = std::tanh(a);
    const double s = 1.0 / std::cosh(a);
    return (2.0 / 3.0) * t * s * s - 1.0 / 3.0 + t / 3.0;
}

/// \int u^2 dz over one loop whose component traverses `seg` of `lvl` twice.
inline double loop_mass_integral(const EnergyLevel& lvl, Segment seg, const QuadratureSpec& spec = {}) {
    return 2.0 * weighted_level_integral(lvl, Kernel::u_squared, seg, spec);
}

/// \int (u'^2 - u^4) dz over one loop.
inline double loop_energy_integral(const EnergyLevel& lvl, Segment seg, const QuadratureSpec& spec = {}) {
    return 2.0 * level_integral(
                     lvl, seg, [](double u, double v2) { return v2 - u * u * u * u; }, spec);
}

}  // namespace nlsgraph
