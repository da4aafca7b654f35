#include "rotgp/diagnostics.hpp"

#include <cmath>

#include "rotgp/errors.hpp"
#include "rotgp/galilean.hpp"
#include "rotgp/init_data.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace {

constexpr cplx I{0.0, 1.0};

struct LabFields {
  ScalarField v;
  VectorField grad_v;
  ScalarField dv_dt;
  VectorField da_dt;
  ScalarField curl_a;
};

LabFields lab_fields(const Model& model, double t) {
  const GridPtr& grid = model.grid();
  PotentialDerivatives dv = eval_dV(model.trap, grid, t);
  LabFields f{eval_V(model.trap, grid, t), std::move(dv.grad), std::move(dv.dt), model.field->rate(t),
              model.field->curl(t)};
  if (model.penalize && grid->obstacle().kind == ObstacleKind::disk) {
    const double s = grid->obstacle().penalization;
    const PenaltyField pen = penalty_field(grid);
    for (std::size_t i = 0; i < grid->count(); ++i) {
      f.v[i] += s * pen.mask[i];
      f.grad_v.set(i, f.grad_v[i] + s * pen.mask_grad[i]);
    }
  }
  return f;
}

double dt_between(const LabView& prev, const LabView& next) {
  const double span = next.time - prev.time;
  if (!(span > 0.0)) throw ConfigError("residuals need increasing snapshot times");
  return span;
}

std::size_t centre_index(const std::vector<WavePair>& traj, double t) {
  if (traj.size() < 3) throw ConfigError("residuals need at least three snapshots");
  std::size_t best = 1;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i)
    if (std::abs(traj[i].time - t) < std::abs(traj[best].time - t)) best = i;
  return best;
}

// Re(conj(P_a) P_b) at node i.
double stress(const ComplexVector& p, int a, int b, std::size_t i) {
  const cplx pa = a == 0 ? p.x[i] : p.y[i];
  const cplx pb = b == 0 ? p.x[i] : p.y[i];
  return (std::conj(pa) * pb).real();
}

}  // namespace

std::array<ScalarField, 2> densities(const WavePair& pair) {
  std::array<ScalarField, 2> out{ScalarField(pair.grid()), ScalarField(pair.grid())};
  for (int k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < out[k].size(); ++i) out[k][i] = std::norm(pair.component[k][i]);
  return out;
}

std::array<VectorField, 2> momenta(const WavePair& pair, const VectorField& a, double epsilon, double eta) {
  const double w = eta == 0.0 ? 1.0 : std::pow(epsilon, eta);
  std::array<VectorField, 2> out{VectorField(pair.grid()), VectorField(pair.grid())};
  for (int k = 0; k < 2; ++k) {
    const ComplexField& f = pair.component[k];
    const ComplexVector g = grad(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Vec2 shift = pair.carrier - w * a[i];
      const cplx px = epsilon * g.x[i] + I * shift.x * f[i];
      const cplx py = epsilon * g.y[i] + I * shift.y * f[i];
      out[k].set(i, {(std::conj(f[i]) * px).imag(), (std::conj(f[i]) * py).imag()});
    }
  }
  return out;
}

double overlap(const ScalarField& rho1, const ScalarField& rho2) {
  double s = 0.0;
  for (std::size_t i = 0; i < rho1.size(); ++i) s += rho1[i] * rho2[i];
  return s * rho1.layout().cell_area();
}

LabView lab_view(const WavePair& pair, const Model& model) {
  const SimParams& p = model.params;
  const WavePair psi = pair.frame == Frame::phi ? inverse(pair, p) : pair;
  const GridPtr& grid = psi.grid();
  const double eps = p.epsilon;
  const double w = p.gauge_weight();
  LabView lab;
  lab.time = psi.time;
  lab.a = model.field->potential(psi.time);
  for (int k = 0; k < 2; ++k) {
    const ComplexField& f = psi.component[k];
    const ComplexVector g = grad(f);
    ComplexVector cov{ComplexField(grid), ComplexField(grid)};
    ScalarField rho(grid);
    VectorField j(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Vec2 shift = psi.carrier - w * lab.a[i];
      cov.x[i] = eps * g.x[i] + I * shift.x * f[i];
      cov.y[i] = eps * g.y[i] + I * shift.y * f[i];
      rho[i] = std::norm(f[i]);
      j.set(i, {(std::conj(f[i]) * cov.x[i]).imag(), (std::conj(f[i]) * cov.y[i]).imag()});
    }
    lab.wave[k] = f;
    lab.density[k] = std::move(rho);
    lab.cov[k] = std::move(cov);
    lab.current[k] = std::move(j);
  }
  return lab;
}

double energy_chi(const LabView& lab, const Model& model, const CutoffField& chi) {
  const SimParams& p = model.params;
  const Vec2 u = p.drift();
  const ScalarField v = lab_fields(model, lab.time).v;
  const GridPtr& grid = v.grid();
  double e = 0.0;
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double c = chi.values[i];
    for (int k = 0; k < 2; ++k) {
      const double rho = lab.density[k][i];
      const double p2 = std::norm(lab.cov[k].x[i]) + std::norm(lab.cov[k].y[i]);
      const double shifted = p2 - 2.0 * dot(u, lab.current[k][i]) + dot(u, u) * rho;
      e += (0.5 * p2 + (v[i] + 1.0) * rho) * (1.0 - c) + 0.5 * shifted * c + (v[i] - p.v_inf) * rho * c;
    }
    const double r1 = lab.density[0][i];
    const double r2 = lab.density[1][i];
    e += 0.5 * (r1 + r2 - 1.0) * (r1 + r2 - 1.0) + (p.gamma - 1.0) * r1 * r2;
  }
  return e * grid->cell_area();
}

double energy_chi(const WavePair& pair, const Model& model, const CutoffField& chi) {
  return energy_chi(lab_view(pair, model), model, chi);
}

double modulated_energy(const WavePair& psi, const ScalarField& rho, const VectorField& u, const VectorField& a,
                        const SimParams& params) {
  if (psi.frame != Frame::psi) throw ConfigError("modulated energy expects a psi-frame pair");
  const double eps = params.epsilon;
  const double w = params.gauge_weight();
  const GridPtr& grid = psi.grid();
  double h = 0.0;
  for (int k = 0; k < 2; ++k) {
    const ComplexField& f = psi.component[k];
    const ComplexVector g = grad(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Vec2 shift = psi.carrier - w * a[i] - u[i];
      const cplx px = eps * g.x[i] + I * shift.x * f[i];
      const cplx py = eps * g.y[i] + I * shift.y * f[i];
      h += 0.5 * (std::norm(px) + std::norm(py));
    }
  }
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double r1 = std::norm(psi.component[0][i]);
    const double r2 = std::norm(psi.component[1][i]);
    const double d = r1 + r2 - rho[i];
    h += 0.5 * d * d + (params.gamma - 1.0) * r1 * r2;
  }
  return h * grid->cell_area();
}

double modulated_energy(const LabView& lab, const ScalarField& rho, const VectorField& u, const SimParams& params) {
  const GridPtr& grid = rho.grid();
  double h = 0.0;
  for (std::size_t i = 0; i < grid->count(); ++i) {
    for (int k = 0; k < 2; ++k) {
      const double p2 = std::norm(lab.cov[k].x[i]) + std::norm(lab.cov[k].y[i]);
      h += 0.5 * (p2 - 2.0 * dot(u[i], lab.current[k][i]) + dot(u[i], u[i]) * lab.density[k][i]);
    }
    const double r1 = lab.density[0][i];
    const double r2 = lab.density[1][i];
    const double d = r1 + r2 - rho[i];
    h += 0.5 * d * d + (params.gamma - 1.0) * r1 * r2;
  }
  return h * grid->cell_area();
}

HydroEnergy modulated_energy_hydro(const std::array<ScalarField, 2>& rho_k, const std::array<VectorField, 2>& j_k,
                                   const ScalarField& rho, const VectorField& u, double epsilon, double gamma) {
  const GridPtr& grid = rho.grid();
  HydroEnergy out;
  double h = 0.0;
  for (int k = 0; k < 2; ++k) {
    ScalarField root(grid);
    for (std::size_t i = 0; i < grid->count(); ++i) root[i] = std::sqrt(std::max(0.0, rho_k[k][i]));
    const VectorField g = grad(root);
    for (std::size_t i = 0; i < grid->count(); ++i) {
      h += 0.5 * epsilon * epsilon * (g.x[i] * g.x[i] + g.y[i] * g.y[i]);
      const double r = rho_k[k][i];
      if (r >= kDensityFloor) {
        const Vec2 m = j_k[k][i] - r * u[i];
        h += 0.5 * dot(m, m) / r;
      } else if (r > 0.0) {
        out.floor_skipped = true;
      }
    }
  }
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double d = rho_k[0][i] + rho_k[1][i] - rho[i];
    h += 0.5 * d * d + (gamma - 1.0) * rho_k[0][i] * rho_k[1][i];
  }
  out.value = h * grid->cell_area();
  return out;
}

ScalarField limit_density(const HydroState& state) {
  ScalarField r = state.rho_hat;
  for (double& v : r.values()) v += 1.0;
  return r;
}

VectorField limit_velocity(const HydroState& state, Vec2 u_inf) {
  VectorField u = state.u_hat;
  for (double& v : u.x.values()) v += u_inf.x;
  for (double& v : u.y.values()) v += u_inf.y;
  return u;
}

std::array<double, 2> mass_residual(const LabView& prev, const LabView& cur, const LabView& next) {
  const double span = dt_between(prev, next);
  std::array<double, 2> out{};
  for (int k = 0; k < 2; ++k) {
    ScalarField r = div(cur.current[k]);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += (next.density[k][i] - prev.density[k][i]) / span;
    out[k] = l2_norm(r);
  }
  return out;
}

double momentum_residual(const LabView& prev, const LabView& cur, const LabView& next, const Model& model) {
  const SimParams& p = model.params;
  const double span = dt_between(prev, next);
  const double eps = p.epsilon;
  const double w = p.gauge_weight();
  const GridPtr& grid = cur.a.grid();
  const std::size_t n = grid->count();
  const LabFields f = lab_fields(model, cur.time);

  // Fields whose gradient or divergence enters, summed over components.
  std::array<VectorField, 2> stress_rows{VectorField(grid), VectorField(grid)};
  ScalarField lap_total(grid), pressure(grid);
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < 2; ++j) {
        stress_rows[j].x[i] += stress(cur.cov[k], 0, j, i);
        stress_rows[j].y[i] += stress(cur.cov[k], 1, j, i);
      }
    }
    lap_total += laplacian(cur.density[k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = cur.density[0][i];
    const double r2 = cur.density[1][i];
    pressure[i] = -0.25 * eps * eps * lap_total[i] + 0.5 * (r1 * r1 + r2 * r2) + p.gamma * r1 * r2;
  }
  const VectorField gp = grad(pressure);
  const std::array<ScalarField, 2> div_stress{div(stress_rows[0]), div(stress_rows[1])};

  VectorField r(grid);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 acc{div_stress[0][i], div_stress[1][i]};
    acc += gp[i];
    const double rho = cur.density[0][i] + cur.density[1][i];
    const Vec2 jsum = cur.current[0][i] + cur.current[1][i];
    acc += (1.0 / span) * (next.current[0][i] + next.current[1][i] - prev.current[0][i] - prev.current[1][i]);
    acc += rho * f.grad_v[i];
    acc += (w * rho) * f.da_dt[i];
    acc += (w * f.curl_a[i]) * perp(jsum);
    r.set(i, acc);
  }
  return l2_norm(r);
}

EnergyRate energy_rate_residual(const LabView& prev, const LabView& cur, const LabView& next, const Model& model,
                                const CutoffField& chi, EnergyVariant variant) {
  const SimParams& p = model.params;
  const double span = dt_between(prev, next);
  const double eps = p.epsilon;
  const double w = p.gauge_weight();
  const Vec2 u = p.drift();
  const GridPtr& grid = cur.a.grid();
  const LabFields f = lab_fields(model, cur.time);
  const ScalarField lap_dir = chi.laplacian_of_directional(u);

  EnergyRate out;
  out.de_dt = (energy_chi(next, model, chi) - energy_chi(prev, model, chi)) / span;

  double rhs = 0.0;
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Vec2 gc = chi.gradient[i];
    const double c = chi.values[i];
    const double u_gc = dot(u, gc);
    const Vec2 force = f.da_dt[i] + f.curl_a[i] * perp(u);
    for (int k = 0; k < 2; ++k) {
      const ComplexVector& pk = cur.cov[k];
      const double rho = cur.density[k][i];
      const Vec2 j = cur.current[k][i];
      const Vec2 su{stress(pk, 0, 0, i) * u.x + stress(pk, 0, 1, i) * u.y,
                    stress(pk, 1, 0, i) * u.x + stress(pk, 1, 1, i) * u.y};
      rhs -= dot(su, gc);
      rhs += 0.25 * eps * eps * lap_dir[i] * rho;
      double far = 0.5 * dot(u, u) - 1.0 - p.v_inf;
      if (variant == EnergyVariant::derivation) far -= (p.gamma - 1.0) * p.a[1 - k];
      rhs += far * dot(j, gc) - w * dot(f.da_dt[i], j) * (1.0 - c);
      rhs -= w * dot(force, j - rho * u) * c;
      rhs += f.dv_dt[i] * rho;
      rhs += dot(f.grad_v[i], u) * rho * c;
    }
    const double r1 = cur.density[0][i];
    const double r2 = cur.density[1][i];
    rhs -= (0.5 * ((r1 + r2) * (r1 + r2) - 1.0) + (p.gamma - 1.0) * r1 * r2) * u_gc;
  }
  out.rhs = rhs * grid->cell_area();
  out.residual = std::abs(out.de_dt - out.rhs);
  return out;
}

std::array<double, 2> mass_residual(const std::vector<WavePair>& trajectory, const Model& model, double t) {
  const std::size_t c = centre_index(trajectory, t);
  return mass_residual(lab_view(trajectory[c - 1], model), lab_view(trajectory[c], model),
                       lab_view(trajectory[c + 1], model));
}

double momentum_residual(const std::vector<WavePair>& trajectory, const Model& model, double t) {
  const std::size_t c = centre_index(trajectory, t);
  return momentum_residual(lab_view(trajectory[c - 1], model), lab_view(trajectory[c], model),
                           lab_view(trajectory[c + 1], model), model);
}

EnergyRate energy_rate_residual(const std::vector<WavePair>& trajectory, const Model& model, const CutoffField& chi,
                                double t, EnergyVariant variant) {
  const std::size_t c = centre_index(trajectory, t);
  return energy_rate_residual(lab_view(trajectory[c - 1], model), lab_view(trajectory[c], model),
                              lab_view(trajectory[c + 1], model), model, chi, variant);
}

ConvergenceMetrics convergence_metrics(const LabView& lab, const HydroState& limit, Vec2 u_inf, double half_width) {
  const GridPtr& grid = limit.rho_hat.grid();
  ConvergenceMetrics m;
  double gap2 = 0.0;
  double total = 0.0;
  std::array<double, 2> comp{};
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double rho = 1.0 + limit.rho_hat[i];
    const Vec2 u = u_inf + limit.u_hat[i];
    const double d = lab.density[0][i] + lab.density[1][i] - rho;
    gap2 += d * d;
    const Vec2 x = grid->node(i);
    if (std::abs(x.x) <= half_width && std::abs(x.y) <= half_width) {
      total += norm(lab.current[0][i] + lab.current[1][i] - rho * u);
      for (int k = 0; k < 2; ++k) comp[k] += norm(lab.current[k][i] - lab.density[k][i] * u);
    }
  }
  const double dA = grid->cell_area();
  m.density_gap = std::sqrt(gap2 * dA);
  m.momentum_gap = total * dA;
  m.component_gap = {comp[0] * dA, comp[1] * dA};
  m.overlap = overlap(lab.density[0], lab.density[1]);
  return m;
}

}  // namespace rotgp
