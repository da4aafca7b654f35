#pragma once

#include <array>

#include "rotgp/field.hpp"

namespace rotgp {

/// C-infinity step on [0, 1]: logistic of c (1/(1-t) - 1/t), c >= 1.
/// Returns the value and its first three derivatives. Flat at both ends;
/// the steepest slope is exactly 2c at t = 1/2. Larger c trades a steeper
/// middle for a faster decaying spectrum.
std::array<double, 4> smooth_step(double t, double steepness = 1.0) noexcept;

/// Radial cutoff: 0 for |x| <= R, 1 for |x| >= 2R.
struct CutoffField {
  double radius = 0.0;
  ScalarField values;
  VectorField gradient;

  /// Profile chi(r) and its first three radial derivatives.
  std::array<double, 4> profile(double r) const noexcept;
  /// Analytic Laplacian of (u . grad chi) for a constant vector u.
  ScalarField laplacian_of_directional(Vec2 u) const;
};

/// Throws ConfigError unless 2R < L/2 and, with an obstacle, R exceeds the
/// farthest obstacle point from the origin.
CutoffField build_cutoff(const GridPtr& grid, double radius);

/// Default radius: max(L/8, 2 x obstacle extent).
double default_cutoff_radius(const Grid2D& grid);

}  // namespace rotgp
