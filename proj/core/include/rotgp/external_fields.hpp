#pragma once

#include "rotgp/field.hpp"

namespace rotgp {

/// omega(t) = base + amplitude * sin(frequency * t).
struct OmegaProfile {
  double base = 1.0;
  double amplitude = 0.0;
  double frequency = 1.0;

  double value(double t) const noexcept;
  double rate(double t) const noexcept;
  bool is_unit() const noexcept { return base == 1.0 && amplitude == 0.0; }
};

enum class RotatingMode { rotating_blend, uniform_constant };

struct RotatingFieldSpec {
  RotatingMode mode = RotatingMode::rotating_blend;
  Vec2 a_inf{};
  OmegaProfile omega{};
  double r1 = 1.0;
  double r2 = 3.0;

  /// Throws ConfigError for bad radii or a nonzero far field with a
  /// time-varying omega (the field would not settle to a constant).
  void validate(double box_length) const;
};

/// Gauge potential A(t, x) = omega(t) * P(x) with a time independent
/// pattern P. In rotating_blend mode P is solid rotation (-x2, x1) inside r1,
/// the constant a_inf outside r2, and a stream-function blend in between:
///
///   P = perp_grad(F(r) + b(r) (a_inf^perp . x)),  F' = r (1 - b),
///
/// with b a C-infinity step from r1 to r2. The periodic part of the stream
/// function is sampled and differentiated spectrally, so div A vanishes on
/// the grid to round-off.
class RotatingField {
 public:
  RotatingField(RotatingFieldSpec spec, GridPtr grid);

  const RotatingFieldSpec& spec() const noexcept { return spec_; }
  const GridPtr& grid() const noexcept { return grid_; }

  /// A(t, x + shift) on the grid nodes.
  VectorField potential(double t, Vec2 shift = {}) const;
  /// dA/dt(t, x + shift).
  VectorField rate(double t, Vec2 shift = {}) const;
  /// curl A(t, x + shift).
  ScalarField curl(double t, Vec2 shift = {}) const;

  /// Analytic pattern value at a point (omega = 1); used for oracles.
  Vec2 pattern_at(Vec2 x) const;
  /// Analytic curl of the pattern at a point.
  double pattern_curl_at(Vec2 x) const;

 private:
  VectorField pattern(Vec2 shift) const;

  RotatingFieldSpec spec_;
  GridPtr grid_;
  ComplexField stream_hat_;  // spectrum of the compactly supported stream part
};

/// V(t, x) = v_inf + amplitude (1 + time_amplitude sin(time_frequency t))
///           * exp(-|x - center|^2 / width^2)
struct TrapPotentialSpec {
  double v_inf = 0.0;
  double amplitude = 0.0;
  double width = 1.0;
  Vec2 center{};
  double time_amplitude = 0.0;
  double time_frequency = 1.0;

  void validate(double box_length) const;
  bool is_static() const noexcept { return time_amplitude == 0.0 || amplitude == 0.0; }
  double value_at(double t, Vec2 x) const noexcept;
};

struct PotentialDerivatives {
  ScalarField dt;
  VectorField grad;
};

// Free-function forms; each builds the field model on the fly.
VectorField eval_A(const RotatingFieldSpec& spec, const GridPtr& grid, double t);
ScalarField eval_curl_A(const RotatingFieldSpec& spec, const GridPtr& grid, double t);

/// V(t, x + shift), with x + shift wrapped into the box.
ScalarField eval_V(const TrapPotentialSpec& spec, const GridPtr& grid, double t, Vec2 shift = {});
PotentialDerivatives eval_dV(const TrapPotentialSpec& spec, const GridPtr& grid, double t, Vec2 shift = {});

/// Smoothed indicator of the obstacle disk, 1 inside and 0 a few cells
/// outside, with its gradient and the outward unit normal. All zero when
/// the grid has no obstacle. The penalization strength is not applied.
struct PenaltyField {
  ScalarField mask;
  VectorField mask_grad;
  VectorField normal;
};
PenaltyField penalty_field(const GridPtr& grid, Vec2 shift = {});

}  // namespace rotgp
