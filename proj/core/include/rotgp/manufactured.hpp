#pragma once

#include "rotgp/euler_solver.hpp"

namespace rotgp {

/// Closed-form flow for verifying the limit-system integrator:
///   rho* = 1 + alpha cos(nu t) g(x),
///   u*   = u_inf + beta sin(nu t + theta) (c_grad grad g + c_perp perp grad g),
/// with g a Gaussian bump. nu = 0 freezes the flow in time. The default
/// width decays to round-off inside a box of side 2 pi.
struct ManufacturedSolution {
  double alpha = 0.1;
  double beta = 0.1;
  double width = 0.6;
  Vec2 center{};
  double c_grad = 1.0;
  double c_perp = 0.5;
  double frequency = 1.0;
  double theta = 0.3;

  HydroState state(const GridPtr& grid, double t) const;
  HydroState time_derivative(const GridPtr& grid, double t) const;
};

/// Source that makes the manufactured flow an exact solution of the limit
/// system with the forcing of `model` (which must not have its own source).
HydroRates mms_forcing(const ManufacturedSolution& solution, const EulerModel& model, double t);

/// Copy of `model` with the manufactured source attached.
EulerModel with_manufactured_source(EulerModel model, const ManufacturedSolution& solution);

}  // namespace rotgp
