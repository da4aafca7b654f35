#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "rotgp/model.hpp"
#include "rotgp/wave_pair.hpp"

namespace rotgp {

/// eps grad f - i eps^eta A f.
ComplexVector covariant_grad(const ComplexField& f, const VectorField& a, double epsilon, double eta);

/// eps^2 lap f - 2 i eps^(1+eta) A.grad f - eps^(2 eta) |A|^2 f, valid for
/// divergence-free A.
ComplexField magnetic_laplacian(const ComplexField& f, const VectorField& a, double epsilon, double eta);

enum class GpScheme { integrating_factor_rk4, strang };

struct StepperConfig {
  /// Fixed step; 0 selects min(dt_factor * eps, stability bound).
  double dt = 0.0;
  double dt_factor = 0.5;
  /// Factor on the explicit-part rate bound. Well below the RK4 stability
  /// limit: it keeps the per-step truncation small enough for the mass drift
  /// to stay near 1e-9 per unit time.
  double stability_factor = 0.025;
  GpScheme scheme = GpScheme::integrating_factor_rk4;
  /// 2/3 rule on the explicit rate.
  bool dealias = true;
};

struct GpEvolveOptions {
  /// Observer interval; 0 means only the final state is reported.
  double cadence = 0.0;
  /// Called with the initial state and after every cadence interval.
  std::function<void(const WavePair&)> observer;
  /// Keep every observed state in the returned trajectory.
  bool store = true;
};

struct GpTrajectory {
  std::vector<WavePair> snapshots;
  double dt = 0.0;
  std::size_t steps = 0;
};

/// Pseudospectral integrator for the two-component system written, for the
/// stored part f of each component, as
///
///   i eps df/dt = -1/2 (eps grad - i G)^2 f + (W + N_k) f,
///
/// where G is the effective gauge vector and W the effective potential of
/// the chosen frame:
///   psi frame: G = eps^eta A - carrier, W = V,
///              N_k = |f_k|^2 + gamma |f_k*|^2;
///   phi frame: G = eps^eta (A(x + u t) - A_inf),
///              W = V(x + u t) - V_inf - eps^eta u.(A(x + u t) - A_inf),
///              N_k = |f_1|^2 + |f_2|^2 - 1 + (gamma - 1)(|f_k*|^2 - a_k*).
/// The Laplacian and the constant far-field frequency of each component are
/// integrated exactly; the rest is advanced with classical RK4.
class GpSolver {
 public:
  GpSolver(Model model, Frame frame, StepperConfig config, Vec2 carrier = {});

  const Model& model() const noexcept { return model_; }
  Frame frame() const noexcept { return frame_; }
  const StepperConfig& config() const noexcept { return config_; }

  /// i eps df/dt for both components.
  std::array<ComplexField, 2> equation_rhs(const WavePair& state) const;
  /// df/dt for both components.
  std::array<ComplexField, 2> time_derivative(const WavePair& state) const;

  /// Largest step allowed by the policy for this state.
  double max_step(const WavePair& state) const;
  void step(WavePair& state, double dt) const;
  GpTrajectory evolve(WavePair state, double horizon, const GpEvolveOptions& options = {}) const;

 private:
  struct Coefficients {
    VectorField gauge;
    ScalarField potential;
  };
  Coefficients coefficients(double t) const;
  std::array<ComplexField, 2> explicit_rate(const std::array<ComplexField, 2>& f, const Coefficients& c) const;
  void step_rk4(WavePair& state, double dt) const;
  void step_strang(WavePair& state, double dt) const;
  void check(const WavePair& state) const;

  Model model_;
  Frame frame_;
  StepperConfig config_;
  Vec2 carrier_;
  std::array<double, 2> background_{};
  // Centre of the dealias band. A psi-frame wave is the phi-frame wave times
  // a plane wave of wavenumber (u_inf - carrier) / eps, so its band sits there.
  std::array<int, 2> band_centre_{};
};

/// || i eps (next - prev) / (t_next - t_prev) - RHS(cur) ||_L2 per component.
std::array<double, 2> residual_phisystm(const GpSolver& solver, const WavePair& prev, const WavePair& cur,
                                        const WavePair& next);

/// Residual at the stored snapshot closest to t (needs neighbours on both sides).
std::array<double, 2> residual_phisystm(const GpSolver& solver, const GpTrajectory& trajectory, double t);

}  // namespace rotgp
