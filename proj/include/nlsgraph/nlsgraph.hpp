#pragma once

#include "bifurcation.hpp"
#include "critical_curve.hpp"
#include "errors.hpp"
#include "ksplit_states.hpp"
#include "levelcurve.hpp"
#include "observables.hpp"
#include "phase_plane.hpp"
#include "profiles.hpp"
#include "quadrature.hpp"
#include "shooting.hpp"
#include "spectral.hpp"
#include "symmetric_state.hpp"
