#pragma once

#include <array>

#include "rotgp/params.hpp"
#include "rotgp/wave_pair.hpp"

namespace rotgp {

/// Drift of the moving frame, U - eps^eta A_inf.
Vec2 drift_velocity(const SimParams& params);
/// Time-phase constants (M_1, M_2) of the moving frame.
std::array<double, 2> phase_constants(const SimParams& params);

/// True when exp(i dU.x / eps) is periodic on a box of side L, i.e.
/// dU L / (2 pi eps) is an integer pair.
bool is_resonant(Vec2 du, double length, double epsilon, double tol = 1e-9);

/// Re-express a pair with a different carrier. Throws ResonanceError when
/// the carrier difference is not periodic on the grid.
WavePair rebase_carrier(const WavePair& pair, Vec2 carrier, double epsilon);

/// psi frame -> phi frame at time pair.time:
///   phi_k(x) = psi_k(x + u t) exp(-i (U.x + M_k t) / eps).
/// The shift is a spectral translation. The plane-wave factor is absorbed
/// analytically when the carrier equals U; otherwise the carrier difference
/// must be resonant.
WavePair forward(const WavePair& psi, const SimParams& params);

/// phi frame -> psi frame, stored with the given carrier (U by default).
WavePair inverse(const WavePair& phi, const SimParams& params);
WavePair inverse(const WavePair& phi, const SimParams& params, Vec2 carrier);

}  // namespace rotgp
