#pragma once

#include <array>
#include <vector>

#include "rotgp/cutoff.hpp"
#include "rotgp/euler_solver.hpp"
#include "rotgp/model.hpp"
#include "rotgp/wave_pair.hpp"

namespace rotgp {

/// |f_k|^2 for both components.
std::array<ScalarField, 2> densities(const WavePair& pair);

/// J_k = Im(conj(psi_k) (eps grad - i eps^eta A) psi_k), carrier included.
std::array<VectorField, 2> momenta(const WavePair& pair, const VectorField& a, double epsilon, double eta);

double overlap(const ScalarField& rho1, const ScalarField& rho2);

/// A state seen in the lab frame with everything the functionals need.
///
/// cov[k] is the covariant gradient eps grad psi_k - i eps^eta A psi_k with
/// the plane-wave carrier stripped, so products like conj(cov) cov and
/// conj(psi) cov are the physical ones.
struct LabView {
  double time = 0.0;
  std::array<ComplexField, 2> wave;
  std::array<ScalarField, 2> density;
  std::array<ComplexVector, 2> cov;
  std::array<VectorField, 2> current;
  VectorField a;
};

/// Converts phi-frame pairs to the lab frame (carrier U) first.
LabView lab_view(const WavePair& pair, const Model& model);

/// Which form of the far-field factor multiplies J_k . grad chi in the
/// energy balance: 1/2|u|^2 - 1 - V_inf (lemma statement) or with an extra
/// -(gamma - 1) a_k* (derivation variant).
enum class EnergyVariant { statement, derivation };

/// e(t): the localized energy with cutoff chi.
double energy_chi(const LabView& lab, const Model& model, const CutoffField& chi);
double energy_chi(const WavePair& pair, const Model& model, const CutoffField& chi);

/// Modulated energy, wave form, of a psi-frame pair against (rho, u).
double modulated_energy(const WavePair& psi, const ScalarField& rho, const VectorField& u, const VectorField& a,
                        const SimParams& params);
double modulated_energy(const LabView& lab, const ScalarField& rho, const VectorField& u, const SimParams& params);

struct HydroEnergy {
  double value = 0.0;
  /// Some node had 0 < rho_k < floor and its velocity term was skipped.
  bool floor_skipped = false;
};

/// Modulated energy, hydrodynamic form.
HydroEnergy modulated_energy_hydro(const std::array<ScalarField, 2>& rho_k, const std::array<VectorField, 2>& j_k,
                                   const ScalarField& rho, const VectorField& u, double epsilon, double gamma);

/// Limit density and full velocity of a hydrodynamic state.
ScalarField limit_density(const HydroState& state);
VectorField limit_velocity(const HydroState& state, Vec2 u_inf);

/// || (rho_k(next) - rho_k(prev)) / dt + div J_k(cur) ||_L2.
std::array<double, 2> mass_residual(const LabView& prev, const LabView& cur, const LabView& next);

/// L2 norm of the summed momentum balance at cur.
double momentum_residual(const LabView& prev, const LabView& cur, const LabView& next, const Model& model);

struct EnergyRate {
  double de_dt = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// Energy balance: centered difference of e(t) against the flux terms at cur.
EnergyRate energy_rate_residual(const LabView& prev, const LabView& cur, const LabView& next, const Model& model,
                                const CutoffField& chi, EnergyVariant variant = EnergyVariant::statement);

// Trajectory forms: pick the stored state closest to t with neighbours on
// both sides.
std::array<double, 2> mass_residual(const std::vector<WavePair>& trajectory, const Model& model, double t);
double momentum_residual(const std::vector<WavePair>& trajectory, const Model& model, double t);
EnergyRate energy_rate_residual(const std::vector<WavePair>& trajectory, const Model& model, const CutoffField& chi,
                                double t, EnergyVariant variant = EnergyVariant::statement);

struct ConvergenceMetrics {
  double density_gap = 0.0;                  // || rho_1 + rho_2 - rho ||_L2
  double momentum_gap = 0.0;                 // || J_1 + J_2 - rho u ||_L1(window)
  std::array<double, 2> component_gap{};     // || J_k - rho_k u ||_L1(window)
  double overlap = 0.0;
};

/// Window is the square [-half_width, half_width]^2.
ConvergenceMetrics convergence_metrics(const LabView& lab, const HydroState& limit, Vec2 u_inf, double half_width);

}  // namespace rotgp
