#include "rotgp/euler_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rotgp/errors.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace {

constexpr cplx I{0.0, 1.0};

// Derivatives of several fields share one forward transform each.
struct SpectralField {
  ComplexField hat;
  explicit SpectralField(const ScalarField& f) : hat(to_spectrum(f)) {}
  ScalarField d(int axis) const {
    ComplexField out = hat;
    const Grid2D& g = hat.layout();
    const auto kd = g.deriv_wavenumbers();
    const int n = g.size();
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1) out[g.index(i1, i2)] *= I * kd[axis == 0 ? i1 : i2];
    return real_from_spectrum(out);
  }
};

// Optional dealiasing and hyperviscosity, applied in transform space.
void filter(ScalarField& rate, const ScalarField& state, const EulerModel& m) {
  if (!m.dealias && m.hyperviscosity == 0.0) return;
  ComplexField r = to_spectrum(rate);
  if (m.hyperviscosity != 0.0) {
    const ComplexField s = to_spectrum(state);
    const Grid2D& g = rate.layout();
    const auto k2 = g.wavenumbers_sq();
    const int n = g.size();
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1) {
        const std::size_t k = g.index(i1, i2);
        r[k] -= m.hyperviscosity * std::pow(k2[i1] + k2[i2], 0.5 * m.hyper_order) * s[k];
      }
  }
  if (m.dealias) dealias_spectrum(r);
  rate = real_from_spectrum(r);
}

void axpy(HydroState& out, const HydroState& base, const HydroRates& k, double h) {
  for (std::size_t i = 0; i < base.rho_hat.size(); ++i) {
    out.rho_hat[i] = base.rho_hat[i] + h * k.rho[i];
    out.u_hat.x[i] = base.u_hat.x[i] + h * k.u.x[i];
    out.u_hat.y[i] = base.u_hat.y[i] + h * k.u.y[i];
  }
}

}  // namespace

EulerModel make_euler_model(const Model& model) {
  EulerModel m;
  m.grid = model.grid();
  const SimParams& p = model.params;
  m.u_inf = p.limit_far_velocity();
  auto field = model.field;
  if (p.eta == 0.0) {
    m.curl_a = [field](double t) { return field->curl(t); };
    if (field->spec().omega.amplitude != 0.0) m.da_dt = [field](double t) { return field->rate(t); };
  }
  const TrapPotentialSpec trap = model.trap;
  const GridPtr grid = model.grid();
  if (trap.amplitude != 0.0) m.grad_v = [trap, grid](double t) { return eval_dV(trap, grid, t).grad; };
  if (model.penalize && grid->obstacle().kind == ObstacleKind::disk) m.drag = grid->obstacle().penalization;
  return m;
}

EulerModel uniform_rotation_model(const GridPtr& grid, double omega) {
  EulerModel m;
  m.grid = grid;
  m.curl_a = [grid, omega](double) { return ScalarField(grid, omega); };
  return m;
}

HydroRates euler_rhs(const HydroState& state, const EulerModel& model) {
  const GridPtr& grid = model.grid;
  const std::size_t n = grid->count();
  const Vec2 uinf = model.u_inf;
  const ScalarField& rh = state.rho_hat;
  const VectorField& uh = state.u_hat;

  for (std::size_t i = 0; i < n; ++i) {
    if (!(1.0 + rh[i] > 0.0)) {
      std::ostringstream msg;
      msg << "vacuum or non-finite density at t = " << state.time;
      throw SolverAbort(msg.str(), state.time);
    }
  }

  // Mass flux rho u minus its constant far-field value.
  VectorField flux(grid);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 u{uinf.x + uh.x[i], uinf.y + uh.y[i]};
    flux.set(i, Vec2{uh.x[i], uh.y[i]} + rh[i] * u);
  }
  HydroRates r{div(flux), VectorField(grid)};
  r.rho *= -1.0;

  const SpectralField sx(uh.x), sy(uh.y), sr(rh);
  const ScalarField ux1 = sx.d(0), ux2 = sx.d(1), uy1 = sy.d(0), uy2 = sy.d(1);
  const ScalarField r1 = sr.d(0), r2 = sr.d(1);

  ScalarField curl;
  if (model.curl_a) curl = model.curl_a(state.time);
  VectorField dadt, gv;
  if (model.da_dt) dadt = model.da_dt(state.time);
  if (model.grad_v) gv = model.grad_v(state.time);
  PenaltyField pen;
  if (model.drag != 0.0) pen = penalty_field(grid);

  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 u{uinf.x + uh.x[i], uinf.y + uh.y[i]};
    Vec2 acc{-(u.x * ux1[i] + u.y * ux2[i]) - r1[i], -(u.x * uy1[i] + u.y * uy2[i]) - r2[i]};
    if (model.curl_a) acc -= curl[i] * perp(u);
    if (model.da_dt) acc -= dadt[i];
    if (model.grad_v) acc -= gv[i];
    if (model.drag != 0.0) {
      const Vec2 nrm = pen.normal[i];
      acc -= (model.drag * pen.mask[i] * dot(u, nrm)) * nrm;
    }
    r.u.set(i, acc);
  }

  if (model.source) {
    const HydroRates s = model.source(state.time);
    r.rho += s.rho;
    r.u.x += s.u.x;
    r.u.y += s.u.y;
  }
  filter(r.rho, rh, model);
  filter(r.u.x, uh.x, model);
  filter(r.u.y, uh.y, model);
  return r;
}

double euler_cfl_step(const HydroState& state, const EulerModel& model, double cfl) {
  double umax = 0.0;
  double cmax = 0.0;
  for (std::size_t i = 0; i < state.rho_hat.size(); ++i) {
    umax = std::max(umax, norm(model.u_inf + state.u_hat[i]));
    cmax = std::max(cmax, std::sqrt(std::max(0.0, 1.0 + state.rho_hat[i])));
  }
  return cfl * model.grid->spacing() / (umax + cmax);
}

void euler_step(HydroState& state, const EulerModel& model, double dt) {
  const double t = state.time;
  HydroState stage = state;
  const HydroRates k1 = euler_rhs(state, model);
  axpy(stage, state, k1, 0.5 * dt);
  stage.time = t + 0.5 * dt;
  const HydroRates k2 = euler_rhs(stage, model);
  axpy(stage, state, k2, 0.5 * dt);
  const HydroRates k3 = euler_rhs(stage, model);
  axpy(stage, state, k3, dt);
  stage.time = t + dt;
  const HydroRates k4 = euler_rhs(stage, model);
  for (std::size_t i = 0; i < state.rho_hat.size(); ++i) {
    state.rho_hat[i] += dt / 6.0 * (k1.rho[i] + 2.0 * (k2.rho[i] + k3.rho[i]) + k4.rho[i]);
    state.u_hat.x[i] += dt / 6.0 * (k1.u.x[i] + 2.0 * (k2.u.x[i] + k3.u.x[i]) + k4.u.x[i]);
    state.u_hat.y[i] += dt / 6.0 * (k1.u.y[i] + 2.0 * (k2.u.y[i] + k3.u.y[i]) + k4.u.y[i]);
  }
  state.time = t + dt;
}

double smoothness_indicator(const HydroState& state) {
  return std::max({spectral_tail_fraction(state.rho_hat), spectral_tail_fraction(state.u_hat.x),
                   spectral_tail_fraction(state.u_hat.y)});
}

HydroTrajectory euler_evolve(HydroState state, const EulerModel& model, double horizon, const EulerConfig& config,
                             const EulerEvolveOptions& options) {
  if (!(horizon >= 0.0)) throw ConfigError("evolution horizon must be nonnegative");
  if (!(config.cfl > 0.0) || config.dt < 0.0) throw ConfigError("Euler time step settings must be positive");
  HydroTrajectory traj;
  auto emit = [&](const HydroState& s) {
    if (options.observer) options.observer(s);
    if (options.store) traj.snapshots.push_back(s);
  };
  emit(state);
  traj.stop_time = state.time;
  if (horizon == 0.0) return traj;

  const double start = state.time;
  const double cadence = options.cadence > 0.0 ? options.cadence : horizon;
  const auto intervals = static_cast<std::size_t>(std::ceil(horizon / cadence - 1e-9));
  for (std::size_t j = 0; j < intervals; ++j) {
    const double a = start + static_cast<double>(j) * cadence;
    const double b = j + 1 == intervals ? start + horizon : start + static_cast<double>(j + 1) * cadence;
    const double dt_max = config.dt > 0.0 ? config.dt : euler_cfl_step(state, model, config.cfl);
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / dt_max - 1e-9)));
    const double dt = (b - a) / static_cast<double>(n);
    traj.dt = dt;
    for (std::size_t s = 0; s < n; ++s) {
      const double last_good = state.time;
      try {
        euler_step(state, model, dt);
      } catch (const SolverAbort& e) {
        throw SolverAbort(e.what(), last_good);
      }
      state.time = s + 1 == n ? b : a + static_cast<double>(s + 1) * dt;
      for (std::size_t i = 0; i < state.rho_hat.size(); ++i)
        if (!std::isfinite(state.rho_hat[i]) || !std::isfinite(state.u_hat.x[i]) || !std::isfinite(state.u_hat.y[i]))
          throw SolverAbort("non-finite hydrodynamic state", last_good);
      // Stop at the first step where the flow is no longer resolved.
      if (smoothness_indicator(state) > config.smoothness_tol) {
        emit(state);
        traj.stop_time = state.time;
        traj.stop_reason = "smoothness";
        return traj;
      }
    }
    emit(state);
    traj.stop_time = b;
  }
  return traj;
}

}  // namespace rotgp
