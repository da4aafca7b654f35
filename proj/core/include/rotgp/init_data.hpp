#pragma once

#include <array>

#include "rotgp/external_fields.hpp"
#include "rotgp/params.hpp"
#include "rotgp/wave_pair.hpp"

namespace rotgp {

/// Densities below this are treated as vacuum wherever a division by the
/// density would occur.
inline constexpr double kDensityFloor = 1e-6;

/// Density and phase of both components. The phase is stored with the
/// linear far-field part U.x removed, so it decays and is periodic.
struct MadelungData {
  std::array<ScalarField, 2> density;
  std::array<ScalarField, 2> phase;
  Vec2 u_inf{};
};

/// Integrals measuring how well the data is prepared for the limit.
struct PreparednessReport {
  double epsilon = 0.0;
  std::array<double, 2> kinetic{};   // eps^2 int |grad sqrt(rho_k)|^2
  std::array<double, 2> velocity{};  // || (grad S_k - A_0 - u_0) sqrt(rho_k) ||^2
  double density_gap = 0.0;          // || rho_1 + rho_2 - rho_0 ||^2
  double overlap = 0.0;              // int rho_1 rho_2
  double h0 = 0.0;                   // modulated energy of the data
  double overlap_weight = 0.0;       // gamma - 1
  /// Sum of the parts with the modulated-energy weights.
  double assembled() const;
};

/// Shape of the canonical bump family.
struct FamilyShape {
  double amplitude = 0.1;
  /// Size of the decaying phase x1 exp(-|x - c|^2 / w^2).
  double phase_amplitude = 0.1;
  double width = 1.0;
  Vec2 center{};
  /// Optional bump in the second component (exploratory mode only). Its
  /// size is second_amplitude * epsilon^second_power, so it does not enter
  /// the limit density.
  double second_amplitude = 0.0;
  double second_power = 1.0;
  Vec2 second_center{};
  double second_width = 1.0;
};

/// Data of the canonical family together with its limit-flow counterpart.
struct CanonicalData {
  MadelungData data;
  ScalarField rho0;
  VectorField u0;
};

/// psi_k = sqrt(rho_k) exp(i S_k / eps) as a psi-frame pair with carrier U.
/// Throws DataError on a negative density.
WavePair madelung(const MadelungData& data, const SimParams& params);

/// Densities and decaying phases from a psi-frame pair. Phases are known
/// modulo 2 pi eps and are set to zero where the density is below the floor.
MadelungData extract_madelung(const WavePair& pair, const SimParams& params);

PreparednessReport well_prepared_report(const MadelungData& data, const VectorField& u0, const ScalarField& rho0,
                                        const VectorField& a0, const SimParams& params);

/// Builds the canonical smooth family. Throws DataError when the density
/// dips below kDensityFloor where it is meant to be positive.
CanonicalData canonical_family(const SimParams& params, const RotatingField& field, const FamilyShape& shape);

}  // namespace rotgp
