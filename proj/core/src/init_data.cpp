#include "rotgp/init_data.hpp"

#include <cmath>
#include <string>

#include "rotgp/errors.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace {

constexpr cplx I{0.0, 1.0};

// Largest deviation from `far` over the outermost ring of nodes.
double edge_deviation(const ScalarField& f, double far) {
  const Grid2D& g = f.layout();
  const int n = g.size();
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    m = std::max({m, std::abs(f.at(i, 0) - far), std::abs(f.at(0, i) - far), std::abs(f.at(i, n - 1) - far),
                  std::abs(f.at(n - 1, i) - far)});
  }
  return m;
}

}  // namespace

double PreparednessReport::assembled() const {
  return 0.5 * (kinetic[0] + kinetic[1]) + 0.5 * (velocity[0] + velocity[1]) + 0.5 * density_gap + overlap_weight * overlap;
}

WavePair madelung(const MadelungData& data, const SimParams& params) {
  const GridPtr& grid = data.density[0].grid();
  WavePair out{Frame::psi, 0.0, data.u_inf, {ComplexField(grid), ComplexField(grid)}};
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < grid->count(); ++i) {
      const double rho = data.density[k][i];
      if (rho < 0.0) throw DataError("negative density in component " + std::to_string(k + 1));
      out.component[k][i] = std::sqrt(rho) * std::exp(I * (data.phase[k][i] / params.epsilon));
    }
  }
  return out;
}

MadelungData extract_madelung(const WavePair& pair, const SimParams& params) {
  const GridPtr& grid = pair.grid();
  MadelungData d{{ScalarField(grid), ScalarField(grid)}, {ScalarField(grid), ScalarField(grid)}, pair.carrier};
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < grid->count(); ++i) {
      const cplx v = pair.component[k][i];
      d.density[k][i] = std::norm(v);
      if (d.density[k][i] >= kDensityFloor) d.phase[k][i] = params.epsilon * std::arg(v);
    }
  }
  return d;
}

PreparednessReport well_prepared_report(const MadelungData& data, const VectorField& u0, const ScalarField& rho0,
                                        const VectorField& a0, const SimParams& params) {
  PreparednessReport r;
  r.epsilon = params.epsilon;
  r.overlap_weight = params.gamma - 1.0;
  const double eps = params.epsilon;
  const double w = params.gauge_weight();
  const GridPtr& grid = rho0.grid();
  const double dA = grid->cell_area();

  for (int k = 0; k < 2; ++k) {
    ScalarField root(grid);
    for (std::size_t i = 0; i < grid->count(); ++i) root[i] = std::sqrt(data.density[k][i]);
    const VectorField gr = grad(root);
    const VectorField gs = grad(data.phase[k]);
    double kin = 0.0;
    double vel = 0.0;
    for (std::size_t i = 0; i < grid->count(); ++i) {
      kin += gr.x[i] * gr.x[i] + gr.y[i] * gr.y[i];
      const Vec2 mismatch = Vec2{gs.x[i], gs.y[i]} + data.u_inf - w * a0[i] - u0[i];
      vel += dot(mismatch, mismatch) * data.density[k][i];
    }
    r.kinetic[k] = eps * eps * kin * dA;
    r.velocity[k] = vel * dA;
  }

  double gap = 0.0;
  double ov = 0.0;
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double d = data.density[0][i] + data.density[1][i] - rho0[i];
    gap += d * d;
    ov += data.density[0][i] * data.density[1][i];
  }
  r.density_gap = gap * dA;
  r.overlap = ov * dA;

  // Modulated energy of the Madelung wave, computed from the wave itself:
  // P_k = eps grad f + i (U - eps^eta A_0 - u_0) f for f the decaying part.
  const WavePair wave = madelung(data, params);
  double h = 0.0;
  for (int k = 0; k < 2; ++k) {
    const ComplexVector gf = grad(wave.component[k]);
    for (std::size_t i = 0; i < grid->count(); ++i) {
      const cplx f = wave.component[k][i];
      const Vec2 shift = data.u_inf - w * a0[i] - u0[i];
      const cplx px = eps * gf.x[i] + I * shift.x * f;
      const cplx py = eps * gf.y[i] + I * shift.y * f;
      h += 0.5 * (std::norm(px) + std::norm(py));
    }
  }
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double r1 = std::norm(wave.component[0][i]);
    const double r2 = std::norm(wave.component[1][i]);
    const double d = r1 + r2 - rho0[i];
    h += 0.5 * d * d + (params.gamma - 1.0) * r1 * r2;
  }
  r.h0 = h * dA;
  return r;
}

CanonicalData canonical_family(const SimParams& params, const RotatingField& field, const FamilyShape& shape) {
  params.validate();
  const GridPtr& grid = field.grid();
  const double w2 = shape.width * shape.width;
  if (!(shape.width > 0.0) || !(shape.second_width > 0.0)) throw DataError("bump widths must be positive");
  if (shape.second_amplitude < 0.0) throw DataError("second-component bump must be nonnegative");
  if (shape.second_amplitude > 0.0 && params.mode == ParamMode::theorem)
    throw DataError("a second-component bump needs exploratory mode");

  const double second = shape.second_amplitude * std::pow(params.epsilon, shape.second_power);
  CanonicalData out{MadelungData{{ScalarField(grid), ScalarField(grid)}, {ScalarField(grid), ScalarField(grid)},
                                 params.u_inf},
                    ScalarField(grid), VectorField(grid)};

  const VectorField a0 = field.potential(0.0);
  const double w = params.eta == 0.0 ? 1.0 : 0.0;  // the gauge term drops out of the limit when eta > 0
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Vec2 d = grid->node(i) - shape.center;
    const double bump = std::exp(-dot(d, d) / w2);
    const Vec2 d2 = grid->node(i) - shape.second_center;
    const double bump2 = std::exp(-dot(d2, d2) / (shape.second_width * shape.second_width));
    double limit_density = 0.0;
    for (int k = 0; k < 2; ++k) {
      if (params.a[k] > 0.0) {
        const double rho = params.a[k] + shape.amplitude * bump;
        out.data.density[k][i] = rho;
        limit_density += rho;
      } else {
        out.data.density[k][i] = second * bump2;
      }
      out.data.phase[k][i] = shape.phase_amplitude * d.x * bump;
    }
    out.rho0[i] = limit_density;
    const Vec2 grad_phase = shape.phase_amplitude * bump * Vec2{1.0 - 2.0 * d.x * d.x / w2, -2.0 * d.x * d.y / w2};
    out.u0.set(i, params.u_inf + grad_phase - w * a0[i]);
  }

  for (int k = 0; k < 2; ++k) {
    if (params.a[k] > 0.0) {
      double lo = out.data.density[k][0];
      for (double v : out.data.density[k].values()) lo = std::min(lo, v);
      if (lo < kDensityFloor)
        throw DataError("amplitude drives component " + std::to_string(k + 1) + " density below the floor");
    }
    if (edge_deviation(out.data.density[k], params.a[k]) > 1e-10 || edge_deviation(out.data.phase[k], 0.0) > 1e-10)
      throw DataError("initial profiles do not decay inside the box");
  }
  return out;
}

}  // namespace rotgp
