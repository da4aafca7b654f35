#include "rotgp/manufactured.hpp"

#include <cmath>

namespace rotgp {
namespace {

struct Bump {
  double g;
  Vec2 grad;
  double hxx, hxy, hyy;
};

Bump bump(const ManufacturedSolution& s, Vec2 x) {
  const Vec2 d = x - s.center;
  const double w2 = s.width * s.width;
  const double g = std::exp(-dot(d, d) / w2);
  const double w4 = w2 * w2;
  return {g, (-2.0 * g / w2) * d, g * (4.0 * d.x * d.x / w4 - 2.0 / w2), g * 4.0 * d.x * d.y / w4,
          g * (4.0 * d.y * d.y / w4 - 2.0 / w2)};
}

// Velocity pattern c_grad grad g + c_perp perp grad g and its Jacobian.
struct Pattern {
  Vec2 v;
  double d1v1, d2v1, d1v2, d2v2;
};

Pattern pattern(const ManufacturedSolution& s, const Bump& b) {
  const double c1 = s.c_grad;
  const double c2 = s.c_perp;
  return {c1 * b.grad + c2 * perp(b.grad), c1 * b.hxx - c2 * b.hxy, c1 * b.hxy - c2 * b.hyy,
          c1 * b.hxy + c2 * b.hxx, c1 * b.hyy + c2 * b.hxy};
}

}  // namespace

HydroState ManufacturedSolution::state(const GridPtr& grid, double t) const {
  HydroState h{t, ScalarField(grid), VectorField(grid)};
  const double dens = alpha * std::cos(frequency * t);
  const double vel = beta * std::sin(frequency * t + theta);
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Bump b = bump(*this, grid->node(i));
    h.rho_hat[i] = dens * b.g;
    h.u_hat.set(i, vel * pattern(*this, b).v);
  }
  return h;
}

HydroState ManufacturedSolution::time_derivative(const GridPtr& grid, double t) const {
  HydroState h{t, ScalarField(grid), VectorField(grid)};
  const double dens = -alpha * frequency * std::sin(frequency * t);
  const double vel = beta * frequency * std::cos(frequency * t + theta);
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Bump b = bump(*this, grid->node(i));
    h.rho_hat[i] = dens * b.g;
    h.u_hat.set(i, vel * pattern(*this, b).v);
  }
  return h;
}

HydroRates mms_forcing(const ManufacturedSolution& s, const EulerModel& model, double t) {
  const GridPtr& grid = model.grid;
  HydroRates f{ScalarField(grid), VectorField(grid)};
  const double dens = s.alpha * std::cos(s.frequency * t);
  const double dens_rate = -s.alpha * s.frequency * std::sin(s.frequency * t);
  const double vel = s.beta * std::sin(s.frequency * t + s.theta);
  const double vel_rate = s.beta * s.frequency * std::cos(s.frequency * t + s.theta);

  ScalarField curl;
  VectorField dadt, gv;
  if (model.curl_a) curl = model.curl_a(t);
  if (model.da_dt) dadt = model.da_dt(t);
  if (model.grad_v) gv = model.grad_v(t);

  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Bump b = bump(s, grid->node(i));
    const Pattern p = pattern(s, b);
    const double rho = 1.0 + dens * b.g;
    const Vec2 u = model.u_inf + vel * p.v;
    const double div_u = vel * (p.d1v1 + p.d2v2);
    f.rho[i] = dens_rate * b.g + dens * dot(b.grad, u) + rho * div_u;

    Vec2 fu = vel_rate * p.v;
    fu += vel * Vec2{u.x * p.d1v1 + u.y * p.d2v1, u.x * p.d1v2 + u.y * p.d2v2};
    fu += dens * b.grad;
    if (model.curl_a) fu += curl[i] * perp(u);
    if (model.da_dt) fu += dadt[i];
    if (model.grad_v) fu += gv[i];
    f.u.set(i, fu);
  }
  return f;
}

EulerModel with_manufactured_source(EulerModel model, const ManufacturedSolution& solution) {
  EulerModel base = model;
  base.source = nullptr;
  model.source = [base, solution](double t) { return mms_forcing(solution, base, t); };
  return model;
}

}  // namespace rotgp
