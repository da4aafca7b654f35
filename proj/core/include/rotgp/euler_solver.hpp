#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rotgp/model.hpp"

namespace rotgp {

/// Limit-flow state as perturbations of the far field:
/// rho = 1 + rho_hat, u = u_inf + u_hat.
struct HydroState {
  double time = 0.0;
  ScalarField rho_hat;
  VectorField u_hat;
};

struct HydroRates {
  ScalarField rho;
  VectorField u;
};

/// Forcing of the limit system, sampled on the grid. Empty callbacks mean
/// the corresponding term vanishes.
struct EulerModel {
  GridPtr grid;
  Vec2 u_inf{};
  std::function<ScalarField(double)> curl_a;
  std::function<VectorField(double)> da_dt;
  std::function<VectorField(double)> grad_v;
  /// Extra additive source, used by manufactured solutions.
  std::function<HydroRates(double)> source;
  /// Drag on the obstacle-normal velocity inside the penalization mask.
  double drag = 0.0;
  bool dealias = true;
  /// Coefficient of -(-lap)^hyper_order added to both equations; 0 is off.
  double hyperviscosity = 0.0;
  int hyper_order = 4;
};

/// Forcing from the rotating field and trap of a GP model. For eta > 0 the
/// gauge terms drop out of the limit and u_inf = U.
EulerModel make_euler_model(const Model& model);

/// Periodic test mode: constant curl A = omega, no trap, u_inf = 0.
EulerModel uniform_rotation_model(const GridPtr& grid, double omega);

struct EulerConfig {
  /// Fixed step; 0 selects the CFL step.
  double dt = 0.0;
  double cfl = 0.5;
  /// Stop once the spectral tail fraction exceeds this.
  double smoothness_tol = 1e-6;
};

struct EulerEvolveOptions {
  /// Observer interval; 0 means one interval spanning the horizon. The CFL
  /// step is chosen at the start of each interval.
  double cadence = 0.0;
  std::function<void(const HydroState&)> observer;
  bool store = true;
};

struct HydroTrajectory {
  std::vector<HydroState> snapshots;
  std::string stop_reason = "horizon";
  double stop_time = 0.0;
  double dt = 0.0;
};

/// d rho_hat/dt = -div(rho u),
/// d u_hat/dt = -(u.grad)u - curl A u_perp - grad rho - dA/dt - grad V,
/// with u_perp = (-u2, u1). Throws SolverAbort where rho <= 0.
HydroRates euler_rhs(const HydroState& state, const EulerModel& model);

/// CFL step dt = cfl h / (max|u| + max sqrt(rho)).
double euler_cfl_step(const HydroState& state, const EulerModel& model, double cfl);

/// One classical RK4 step.
void euler_step(HydroState& state, const EulerModel& model, double dt);

/// Largest spectral tail fraction over rho_hat and both velocity components.
double smoothness_indicator(const HydroState& state);

HydroTrajectory euler_evolve(HydroState state, const EulerModel& model, double horizon, const EulerConfig& config,
                             const EulerEvolveOptions& options = {});

}  // namespace rotgp
