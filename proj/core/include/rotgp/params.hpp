#pragma once

#include <array>

#include "rotgp/vec2.hpp"

namespace rotgp {

/// theorem: far-field densities (1, 0). exploratory: any a1 + a2 = 1, and
/// the second component may carry an epsilon-scaled bump.
enum class ParamMode { theorem, exploratory };

struct SimParams {
  double epsilon = 0.1;
  /// Exponent on epsilon in front of the gauge potential.
  double eta = 0.0;
  /// Inter-component coupling.
  double gamma = 1.0;
  /// Far-field densities of the two components.
  std::array<double, 2> a{1.0, 0.0};
  Vec2 u_inf{};
  Vec2 a_inf{};
  double v_inf = 0.0;
  double horizon = 0.25;
  ParamMode mode = ParamMode::theorem;

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  /// epsilon^eta, the weight of the gauge potential.
  double gauge_weight() const;
  /// Drift u = U - epsilon^eta A_inf of the moving frame.
  Vec2 drift() const;
  /// Far-field velocity of the limit flow, U - A_inf for eta = 0 and U for eta > 0.
  Vec2 limit_far_velocity() const;
  /// Per-component time-phase constants of the moving frame.
  std::array<double, 2> phase_constants() const;
};

}  // namespace rotgp
