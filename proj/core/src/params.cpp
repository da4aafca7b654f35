#include "rotgp/params.hpp"

#include <cmath>
#include <string>

#include "rotgp/errors.hpp"

namespace rotgp {

void SimParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be nonnegative");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be at least 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon T must be positive");
  if (a[0] < 0.0 || a[1] < 0.0) throw ConfigError("far-field densities must be nonnegative");
  if (mode == ParamMode::theorem) {
    const bool first = a[0] == 1.0 && a[1] == 0.0;
    const bool second = a[0] == 0.0 && a[1] == 1.0;
    if (!first && !second) throw ConfigError("theorem mode requires far-field densities (1,0) or (0,1)");
  } else if (std::abs(a[0] + a[1] - 1.0) > 1e-12) {
    throw ConfigError("far-field densities must sum to 1, got " + std::to_string(a[0] + a[1]));
  }
}

double SimParams::gauge_weight() const { return eta == 0.0 ? 1.0 : std::pow(epsilon, eta); }

Vec2 SimParams::drift() const { return u_inf - gauge_weight() * a_inf; }

Vec2 SimParams::limit_far_velocity() const { return eta == 0.0 ? u_inf - a_inf : u_inf; }

std::array<double, 2> SimParams::phase_constants() const {
  const double w = gauge_weight();
  const double kinetic = 0.5 * (dot(u_inf, u_inf) - w * w * dot(a_inf, a_inf));
  return {kinetic - v_inf - (1.0 + (gamma - 1.0) * a[1]), kinetic - v_inf - (1.0 + (gamma - 1.0) * a[0])};
}

}  // namespace rotgp
