#include "rotgp/gp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rotgp/errors.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace {

constexpr cplx I{0.0, 1.0};
using Pair = std::array<ComplexField, 2>;

bool all_zero(const ComplexField& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](const cplx& v) { return v == cplx{}; });
}

bool all_zero(const VectorField& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.x[i] != 0.0 || v.y[i] != 0.0) return false;
  return true;
}

// Per-mode factor exp(-i (eps |k|^2 / 2 + c / eps) tau).
struct LinearPropagator {
  const Grid2D* grid;
  double epsilon;
  double background;
  double tau;

  void apply(ComplexField& fhat) const {
    const int n = grid->size();
    const auto k2 = grid->wavenumbers_sq();
    const double c = background / epsilon;
    for (int i2 = 0; i2 < n; ++i2) {
      for (int i1 = 0; i1 < n; ++i1) {
        const double omega = 0.5 * epsilon * (k2[i1] + k2[i2]) + c;
        fhat[grid->index(i1, i2)] *= std::polar(1.0, -omega * tau);
      }
    }
  }
};

// Nonlinear density term N_k for component k.
double nonlinear_density(Frame frame, const SimParams& p, int k, double r1, double r2) {
  const double own = k == 0 ? r1 : r2;
  const double other = k == 0 ? r2 : r1;
  if (frame == Frame::psi) return own + p.gamma * other;
  return r1 + r2 - 1.0 + (p.gamma - 1.0) * (other - p.a[1 - k]);
}

}  // namespace

ComplexVector covariant_grad(const ComplexField& f, const VectorField& a, double epsilon, double eta) {
  const double w = eta == 0.0 ? 1.0 : std::pow(epsilon, eta);
  ComplexVector g = grad(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    g.x[i] = epsilon * g.x[i] - I * (w * a.x[i]) * f[i];
    g.y[i] = epsilon * g.y[i] - I * (w * a.y[i]) * f[i];
  }
  return g;
}

ComplexField magnetic_laplacian(const ComplexField& f, const VectorField& a, double epsilon, double eta) {
  const double w = eta == 0.0 ? 1.0 : std::pow(epsilon, eta);
  const ComplexField lap = laplacian(f);
  const ComplexVector g = grad(f);
  ComplexField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a2 = a.x[i] * a.x[i] + a.y[i] * a.y[i];
    out[i] = epsilon * epsilon * lap[i] - 2.0 * I * epsilon * w * (a.x[i] * g.x[i] + a.y[i] * g.y[i]) -
             w * w * a2 * f[i];
  }
  return out;
}

GpSolver::GpSolver(Model model, Frame frame, StepperConfig config, Vec2 carrier)
    : model_(std::move(model)), frame_(frame), config_(config), carrier_(carrier) {
  model_.params.validate();
  if (frame_ == Frame::phi && (carrier_.x != 0.0 || carrier_.y != 0.0))
    throw ConfigError("phi-frame states carry no plane-wave carrier");
  if (!(config_.dt_factor > 0.0) || !(config_.stability_factor > 0.0) || config_.dt < 0.0)
    throw ConfigError("time step settings must be positive");
  const SimParams& p = model_.params;
  if (frame_ == Frame::psi) {
    const Vec2 g_inf = p.gauge_weight() * model_.field->spec().omega.value(0.0) * p.a_inf - carrier_;
    for (int k = 0; k < 2; ++k) background_[k] = 0.5 * dot(g_inf, g_inf) + p.v_inf + p.a[k] + p.gamma * p.a[1 - k];
    const Vec2 du = p.u_inf - carrier_;
    const double scale = model_.grid()->length() / (2.0 * std::numbers::pi * p.epsilon);
    const double m1 = du.x * scale, m2 = du.y * scale;
    // Off the lattice no mode matches the plane wave; keep the plain band.
    if (std::abs(m1 - std::round(m1)) < 1e-9 && std::abs(m2 - std::round(m2)) < 1e-9)
      band_centre_ = {static_cast<int>(std::lround(m1)), static_cast<int>(std::lround(m2))};
  }
  if (config_.scheme == GpScheme::strang && !all_zero(coefficients(0.0).gauge))
    throw ConfigError("the split-step scheme needs a vanishing effective gauge field");
}

GpSolver::Coefficients GpSolver::coefficients(double t) const {
  const SimParams& p = model_.params;
  const GridPtr& grid = model_.grid();
  const double w = p.gauge_weight();
  const Vec2 shift = frame_ == Frame::phi ? t * p.drift() : Vec2{};
  Coefficients c{model_.field->potential(t, shift), eval_V(model_.trap, grid, t, shift)};
  if (model_.penalize && grid->obstacle().kind == ObstacleKind::disk) {
    const PenaltyField pen = penalty_field(grid, shift);
    for (std::size_t i = 0; i < grid->count(); ++i) c.potential[i] += grid->obstacle().penalization * pen.mask[i];
  }
  if (frame_ == Frame::psi) {
    for (std::size_t i = 0; i < grid->count(); ++i) c.gauge.set(i, w * c.gauge[i] - carrier_);
  } else {
    const Vec2 u = p.drift();
    for (std::size_t i = 0; i < grid->count(); ++i) {
      const Vec2 b = c.gauge[i] - p.a_inf;
      c.gauge.set(i, w * b);
      c.potential[i] -= p.v_inf + w * dot(u, b);
    }
  }
  return c;
}

Pair GpSolver::explicit_rate(const Pair& f, const Coefficients& c) const {
  const SimParams& p = model_.params;
  const double eps = p.epsilon;
  const GridPtr& grid = model_.grid();
  const bool gauge_free = all_zero(c.gauge);
  Pair out{ComplexField(grid), ComplexField(grid)};
  for (int k = 0; k < 2; ++k) {
    if (all_zero(f[k])) continue;
    ComplexVector g;
    if (!gauge_free) g = grad(f[k]);
    for (std::size_t i = 0; i < grid->count(); ++i) {
      const Vec2 gv = c.gauge[i];
      const double pot = 0.5 * dot(gv, gv) + c.potential[i] +
                         nonlinear_density(frame_, p, k, std::norm(f[0][i]), std::norm(f[1][i])) - background_[k];
      cplx v = -I * (pot / eps) * f[k][i];
      if (!gauge_free) v += gv.x * g.x[i] + gv.y * g.y[i];
      out[k][i] = v;
    }
  }
  return out;
}

Pair GpSolver::equation_rhs(const WavePair& state) const {
  const SimParams& p = model_.params;
  const double eps = p.epsilon;
  const Coefficients c = coefficients(state.time);
  const GridPtr& grid = model_.grid();
  Pair out{ComplexField(grid), ComplexField(grid)};
  for (int k = 0; k < 2; ++k) {
    const ComplexField& f = state.component[k];
    const ComplexField lap = laplacian(f);
    const ComplexVector g = grad(f);
    for (std::size_t i = 0; i < grid->count(); ++i) {
      const Vec2 gv = c.gauge[i];
      const double pot = 0.5 * dot(gv, gv) + c.potential[i] +
                         nonlinear_density(frame_, p, k, std::norm(state.component[0][i]),
                                           std::norm(state.component[1][i]));
      out[k][i] = -0.5 * eps * eps * lap[i] + I * eps * (gv.x * g.x[i] + gv.y * g.y[i]) + pot * f[i];
    }
  }
  return out;
}

Pair GpSolver::time_derivative(const WavePair& state) const {
  Pair r = equation_rhs(state);
  const cplx scale = 1.0 / (I * model_.params.epsilon);
  for (auto& f : r) f *= scale;
  return r;
}

double GpSolver::max_step(const WavePair& state) const {
  if (config_.dt > 0.0) return config_.dt;
  const SimParams& p = model_.params;
  const Coefficients c = coefficients(state.time);
  const GridPtr& grid = model_.grid();
  double gauge = 0.0;
  double pot = 0.0;
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Vec2 gv = c.gauge[i];
    gauge = std::max(gauge, norm(gv));
    for (int k = 0; k < 2; ++k) {
      const double v = 0.5 * dot(gv, gv) + c.potential[i] - background_[k] +
                       nonlinear_density(frame_, p, k, std::norm(state.component[0][i]),
                                         std::norm(state.component[1][i]));
      pot = std::max(pot, std::abs(v));
    }
  }
  const double kmax = grid->max_wavenumber() * (config_.dealias ? 2.0 / 3.0 : 1.0);
  const double rate = gauge * kmax + pot / p.epsilon;
  const double stable = rate > 0.0 ? config_.stability_factor / rate : std::numeric_limits<double>::infinity();
  return std::min(config_.dt_factor * p.epsilon, stable);
}

void GpSolver::step(WavePair& state, double dt) const {
  if (config_.scheme == GpScheme::strang)
    step_strang(state, dt);
  else
    step_rk4(state, dt);
  state.time += dt;
}

void GpSolver::step_rk4(WavePair& state, double dt) const {
  const GridPtr& grid = model_.grid();
  const double eps = model_.params.epsilon;
  const double t = state.time;
  const Coefficients c0 = coefficients(t);
  const Coefficients ch = coefficients(t + 0.5 * dt);
  const Coefficients c1 = coefficients(t + dt);

  auto spectra = [&](const Pair& f) {
    Pair s{to_spectrum(f[0]), to_spectrum(f[1])};
    if (config_.dealias) {
      dealias_spectrum(s[0], band_centre_);
      dealias_spectrum(s[1], band_centre_);
    }
    return s;
  };
  auto propagate = [&](ComplexField fhat, int k, double tau) {
    LinearPropagator{grid.get(), eps, background_[k], tau}.apply(fhat);
    return fhat;
  };

  const Pair u0{to_spectrum(state.component[0]), to_spectrum(state.component[1])};
  const Pair ka = spectra(explicit_rate(state.component, c0));

  Pair ua, ub, uc;
  for (int k = 0; k < 2; ++k) {
    ComplexField s = u0[k];
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += 0.5 * dt * ka[k][i];
    ua[k] = from_spectrum(propagate(std::move(s), k, 0.5 * dt));
  }
  const Pair kb = spectra(explicit_rate(ua, ch));

  Pair half_u0{propagate(u0[0], 0, 0.5 * dt), propagate(u0[1], 1, 0.5 * dt)};
  for (int k = 0; k < 2; ++k) {
    ComplexField s = half_u0[k];
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += 0.5 * dt * kb[k][i];
    ub[k] = from_spectrum(s);
  }
  const Pair kc = spectra(explicit_rate(ub, ch));

  Pair full_u0{propagate(u0[0], 0, dt), propagate(u0[1], 1, dt)};
  for (int k = 0; k < 2; ++k) {
    ComplexField s = propagate(kc[k], k, 0.5 * dt);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = full_u0[k][i] + dt * s[i];
    uc[k] = from_spectrum(s);
  }
  const Pair kd = spectra(explicit_rate(uc, c1));

  for (int k = 0; k < 2; ++k) {
    const ComplexField a = propagate(ka[k], k, dt);
    ComplexField bc = kb[k];
    bc += kc[k];
    bc = propagate(std::move(bc), k, 0.5 * dt);
    ComplexField s = full_u0[k];
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += (dt / 6.0) * (a[i] + 2.0 * bc[i] + kd[k][i]);
    state.component[k] = from_spectrum(s);
  }
}

void GpSolver::step_strang(WavePair& state, double dt) const {
  const GridPtr& grid = model_.grid();
  const SimParams& p = model_.params;
  const double eps = p.epsilon;
  for (int k = 0; k < 2; ++k) {
    ComplexField s = to_spectrum(state.component[k]);
    LinearPropagator{grid.get(), eps, background_[k], 0.5 * dt}.apply(s);
    state.component[k] = from_spectrum(s);
  }
  const Coefficients c = coefficients(state.time + 0.5 * dt);
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double r1 = std::norm(state.component[0][i]);
    const double r2 = std::norm(state.component[1][i]);
    for (int k = 0; k < 2; ++k) {
      const double pot = c.potential[i] + nonlinear_density(frame_, p, k, r1, r2) - background_[k];
      state.component[k][i] *= std::polar(1.0, -pot * dt / eps);
    }
  }
  for (int k = 0; k < 2; ++k) {
    ComplexField s = to_spectrum(state.component[k]);
    LinearPropagator{grid.get(), eps, background_[k], 0.5 * dt}.apply(s);
    state.component[k] = from_spectrum(s);
  }
}

void GpSolver::check(const WavePair& state) const {
  for (const auto& f : state.component)
    for (const cplx& v : f.values())
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "non-finite wave function at t = " << state.time;
        throw SolverAbort(msg.str(), state.time);
      }
}

GpTrajectory GpSolver::evolve(WavePair state, double horizon, const GpEvolveOptions& options) const {
  if (state.frame != frame_) throw ConfigError("state frame does not match the solver frame");
  if (!(horizon >= 0.0)) throw ConfigError("evolution horizon must be nonnegative");
  GpTrajectory traj;
  auto emit = [&](const WavePair& s) {
    if (options.observer) options.observer(s);
    if (options.store) traj.snapshots.push_back(s);
  };
  emit(state);
  if (horizon == 0.0) return traj;

  const double start = state.time;
  const double cadence = options.cadence > 0.0 ? options.cadence : horizon;
  const auto intervals = static_cast<std::size_t>(std::ceil(horizon / cadence - 1e-9));
  for (std::size_t j = 0; j < intervals; ++j) {
    const double a = start + static_cast<double>(j) * cadence;
    const double b = j + 1 == intervals ? start + horizon : start + static_cast<double>(j + 1) * cadence;
    const double dt_max = max_step(state);
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / dt_max - 1e-9)));
    const double dt = (b - a) / static_cast<double>(n);
    traj.dt = dt;
    for (std::size_t s = 0; s < n; ++s) {
      const double last_good = state.time;
      step(state, dt);
      state.time = a + static_cast<double>(s + 1) * dt;
      try {
        check(state);
      } catch (const SolverAbort& e) {
        throw SolverAbort(e.what(), last_good);
      }
      ++traj.steps;
    }
    state.time = b;
    emit(state);
  }
  return traj;
}

std::array<double, 2> residual_phisystm(const GpSolver& solver, const WavePair& prev, const WavePair& cur,
                                        const WavePair& next) {
  const double span = next.time - prev.time;
  if (!(span > 0.0)) throw ConfigError("residual needs increasing snapshot times");
  const auto rhs = solver.equation_rhs(cur);
  const double eps = solver.model().params.epsilon;
  std::array<double, 2> out{};
  for (int k = 0; k < 2; ++k) {
    ComplexField r(cur.grid());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = cplx{0.0, eps} * (next.component[k][i] - prev.component[k][i]) / span - rhs[k][i];
    out[k] = l2_norm(r);
  }
  return out;
}

std::array<double, 2> residual_phisystm(const GpSolver& solver, const GpTrajectory& trajectory, double t) {
  const auto& s = trajectory.snapshots;
  if (s.size() < 3) throw ConfigError("residual needs at least three snapshots");
  std::size_t best = 1;
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    if (std::abs(s[i].time - t) < std::abs(s[best].time - t)) best = i;
  return residual_phisystm(solver, s[best - 1], s[best], s[best + 1]);
}

}  // namespace rotgp
