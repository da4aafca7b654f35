#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotgp/diagnostics.hpp"
#include "rotgp/galilean.hpp"
#include "rotgp/gp_solver.hpp"
#include "rotgp/init_data.hpp"
#include "rotgp/spectral.hpp"

using namespace rotgp;
using std::numbers::pi;

namespace {

constexpr cplx I{0.0, 1.0};

RotatingFieldSpec constant_field(Vec2 a_inf) {
  RotatingFieldSpec s;
  s.mode = RotatingMode::uniform_constant;
  s.a_inf = a_inf;
  return s;
}

RotatingFieldSpec rotating_field() {
  RotatingFieldSpec s;
  s.r1 = 0.5;
  s.r2 = 5.5;
  s.omega.base = 0.25;
  return s;
}

double vec_gap(const VectorField& a, Vec2 b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, norm(a[i] - b));
  return m;
}

// Resonant plane wave on the 2 pi box: U L / (2 pi eps) = (4, 2).
struct PlaneWave {
  GridPtr grid = make_grid(2.0 * pi, 32);
  SimParams params = [] {
    SimParams p;
    p.epsilon = 0.25;
    p.u_inf = {1.0, 0.5};
    return p;
  }();
  WavePair wave() const {
    return {Frame::psi, 0.0, {}, {sample(grid, [&](Vec2 x) { return std::exp(I * (dot(params.u_inf, x) / params.epsilon)); }),
                                  ComplexField(grid)}};
  }
};

}  // namespace

TEST_CASE("densities") {
  const GridPtr g = make_grid(4.0, 16);
  const WavePair w{Frame::psi, 0.0, {}, {ComplexField(g, std::sqrt(2.0) * std::exp(I * 0.7)), ComplexField(g)}};
  const auto rho = densities(w);
  for (std::size_t i = 0; i < g->count(); ++i) {
    CHECK(rho[0][i] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rho[1][i] == 0.0);
  }

  SimParams p;
  MadelungData d{{ScalarField(g), ScalarField(g)}, {ScalarField(g), ScalarField(g)}, {}};
  for (std::size_t i = 0; i < g->count(); ++i) {
    d.density[0][i] = 1.0 + 0.3 * std::cos(g->node(i).x);
    d.phase[0][i] = 0.05 * std::sin(g->node(i).y);
  }
  const auto back = densities(madelung(d, p));
  CHECK(max_abs(back[0] - d.density[0]) < 1e-14);
}

TEST_CASE("momenta") {
  const PlaneWave pw;
  const auto j = momenta(pw.wave(), VectorField(pw.grid), pw.params.epsilon, 0.0);
  CHECK(vec_gap(j[0], pw.params.u_inf) < 1e-12);
  CHECK(vec_gap(j[1], {}) == 0.0);

  // Real wave: only the gauge term contributes.
  const GridPtr g = make_grid(8.0, 64);
  const ComplexField f = sample(g, [](Vec2 x) { return cplx{1.0 + 0.5 * std::exp(-dot(x, x)), 0.0}; });
  const VectorField a = sample_vector(g, [](Vec2 x) { return Vec2{-x.y, x.x} * std::exp(-dot(x, x) / 4.0); });
  const auto jr = momenta({Frame::psi, 0.0, {}, {f, ComplexField(g)}}, a, 0.1, 0.0);
  double err = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i) err = std::max(err, norm(jr[0][i] + std::norm(f[i]) * a[i]));
  CHECK(err < 1e-15);
}

TEST_CASE("overlap") {
  const GridPtr g = make_grid(6.0, 32);
  const ScalarField left = sample(g, [](Vec2 x) { return x.x < 0.0 ? 1.0 : 0.0; });
  const ScalarField right = sample(g, [](Vec2 x) { return x.x >= 0.0 ? 1.0 : 0.0; });
  CHECK(overlap(left, right) == 0.0);
  CHECK(overlap(ScalarField(g, 1.0), ScalarField(g, 1.0)) == doctest::Approx(36.0));
}

TEST_CASE("localized energy of the far-field state") {
  const GridPtr g = make_grid(12.8, 64);
  SimParams p;
  p.u_inf = {0.5, 0.2};
  p.a_inf = {0.1, -0.3};
  p.v_inf = 0.3;
  TrapPotentialSpec trap;
  trap.v_inf = p.v_inf;
  const Model m = make_model(p, constant_field(p.a_inf), trap, g);
  const CutoffField chi = build_cutoff(g, 1.6);
  const WavePair phi{Frame::phi, 0.4, {}, {ComplexField(g, 1.0), ComplexField(g)}};

  // Inside chi the shifted kinetic term vanishes; outside the wave carries
  // 1/2 |U - A_inf|^2 + V_inf + 1 per unit density.
  double outside = 0.0;
  for (double c : chi.values.values()) outside += (1.0 - c) * g->cell_area();
  const Vec2 u = p.u_inf - p.a_inf;
  CHECK(energy_chi(phi, m, chi) == doctest::Approx((0.5 * dot(u, u) + p.v_inf + 1.0) * outside).epsilon(1e-12));
}

TEST_CASE("localized energy of the empty state") {
  // Only the quartic term survives: 1/2 (0 - 1)^2 over the box.
  const GridPtr g = make_grid(6.0, 32);
  const Model m = make_model(SimParams{}, constant_field({}), {}, g);
  const WavePair zero{Frame::psi, 0.0, {}, {ComplexField(g), ComplexField(g)}};
  CHECK(energy_chi(zero, m, build_cutoff(g, 1.0)) == doctest::Approx(18.0).epsilon(1e-14));
}

TEST_CASE("coupling weight only multiplies the overlap") {
  const GridPtr g = make_grid(12.8, 64);
  SimParams p;
  p.mode = ParamMode::exploratory;
  p.a = {0.5, 0.5};
  SimParams q = p;
  q.gamma = 2.0;
  const CutoffField chi = build_cutoff(g, 1.6);
  const WavePair w{Frame::psi, 0.0, {},
                   {sample(g, [](Vec2 x) { return cplx{std::sqrt(0.5) + 0.2 * std::exp(-dot(x, x)), 0.0}; }),
                    sample(g, [](Vec2 x) { return cplx{std::sqrt(0.5), 0.1 * std::exp(-dot(x, x))}; })}};
  const double e1 = energy_chi(w, make_model(p, rotating_field(), {}, g), chi);
  const double e2 = energy_chi(w, make_model(q, rotating_field(), {}, g), chi);
  const auto rho = densities(w);
  CHECK(e2 - e1 == doctest::Approx(overlap(rho[0], rho[1])).epsilon(1e-12));
}

TEST_CASE("modulated energy") {
  const GridPtr g = make_grid(12.8, 128);
  SimParams p;
  p.u_inf = {0.5, 0.0};
  const RotatingField field(rotating_field(), g);
  const CanonicalData c = canonical_family(p, field, FamilyShape{});
  const WavePair psi = madelung(c.data, p);
  const VectorField a = field.potential(0.0);

  // The family data is matched up to its O(eps^2) quantum kinetic part.
  const double h = modulated_energy(psi, c.rho0, c.u0, a, p);
  FamilyShape flat;
  flat.amplitude = 0.0;
  const CanonicalData matched = canonical_family(p, field, flat);
  CHECK(modulated_energy(madelung(matched.data, p), matched.rho0, matched.u0, a, p) < 1e-10);
  CHECK(h > 0.0);

  // Wave and hydrodynamic forms of the same functional.
  const Model m = make_model(p, rotating_field(), {}, g);
  const LabView lab = lab_view(psi, m);
  const HydroEnergy hydro = modulated_energy_hydro(lab.density, lab.current, c.rho0, c.u0, p.epsilon, p.gamma);
  CHECK_FALSE(hydro.floor_skipped);
  CHECK(std::abs(hydro.value - h) < 1e-6 * h);
  CHECK(modulated_energy(lab, c.rho0, c.u0, p) == doctest::Approx(h).epsilon(1e-10));

  const HydroEnergy zero = modulated_energy_hydro(matched.data.density, {VectorField(g), VectorField(g)},
                                                   ScalarField(g, 1.0), VectorField(g), p.epsilon, p.gamma);
  CHECK(zero.value == 0.0);
}

TEST_CASE("modulated energy of a plane wave against rest") {
  const PlaneWave pw;
  const GridPtr& g = pw.grid;
  const double h = modulated_energy(pw.wave(), ScalarField(g, 1.0), VectorField(g), VectorField(g), pw.params);
  const double area = 4.0 * pi * pi;
  CHECK(h == doctest::Approx(0.5 * dot(pw.params.u_inf, pw.params.u_inf) * area).epsilon(1e-12));

  // Nonnegative for arbitrary inputs.
  const WavePair rough{Frame::psi, 0.0, {},
                       {sample(g, [](Vec2 x) { return cplx{std::sin(3.0 * x.x), std::cos(x.y)}; }),
                        sample(g, [](Vec2 x) { return cplx{0.2 * std::cos(2.0 * x.y), 0.0}; })}};
  const VectorField u = sample_vector(g, [](Vec2 x) { return Vec2{std::cos(x.y), -0.4}; });
  const ScalarField rho = sample(g, [](Vec2 x) { return 2.0 + std::sin(x.x); });
  CHECK(modulated_energy(rough, rho, u, u, pw.params) >= 0.0);
}

TEST_CASE("conservation residuals vanish on exact states") {
  const GridPtr g = make_grid(12.8, 64);
  SimParams p;
  p.u_inf = {0.5, 0.0};
  p.a_inf = {0.0, 0.2};
  const Model m = make_model(p, constant_field(p.a_inf), {}, g);
  std::vector<WavePair> traj;
  for (int j = 0; j < 3; ++j) traj.push_back({Frame::phi, 0.1 * j, {}, {ComplexField(g, 1.0), ComplexField(g)}});
  const auto mass = mass_residual(traj, m, 0.1);
  CHECK(mass[0] < 1e-12);
  CHECK(mass[1] == 0.0);
  CHECK(momentum_residual(traj, m, 0.1) < 1e-12);
  const EnergyRate e = energy_rate_residual(traj, m, build_cutoff(g, 1.6), 0.1);
  CHECK(std::abs(e.residual) < 1e-10);
}

TEST_CASE("conservation residuals on the plane-wave run") {
  const PlaneWave pw;
  const Model m = make_model(pw.params, constant_field({}), {}, pw.grid);
  const GpTrajectory traj = GpSolver(m, Frame::psi, {}).evolve(pw.wave(), 0.2, {0.05});
  const auto mass = mass_residual(traj.snapshots, m, 0.1);
  CHECK(mass[0] < 1e-6);
  CHECK(mass[1] == 0.0);
  CHECK(momentum_residual(traj.snapshots, m, 0.1) < 1e-5);
}

TEST_CASE("convergence metrics of a matched limit") {
  const GridPtr g = make_grid(12.8, 128);
  SimParams p;
  p.u_inf = {0.5, 0.0};
  const Model m = make_model(p, rotating_field(), {}, g);
  const CanonicalData c = canonical_family(p, *m.field, FamilyShape{});
  const LabView lab = lab_view(madelung(c.data, p), m);

  const Vec2 u_inf = p.limit_far_velocity();
  HydroState limit{0.0, c.rho0 - ScalarField(g, 1.0), VectorField(g)};
  for (std::size_t i = 0; i < g->count(); ++i) limit.u_hat.set(i, c.u0[i] - u_inf);
  CHECK(max_abs(limit_density(limit) - c.rho0) < 1e-15);
  CHECK(max_norm(VectorField(limit_velocity(limit, u_inf).x - c.u0.x, limit_velocity(limit, u_inf).y - c.u0.y)) < 1e-15);

  const ConvergenceMetrics cm = convergence_metrics(lab, limit, u_inf, 3.0);
  CHECK(cm.density_gap < 1e-14);
  CHECK(cm.overlap == 0.0);
  CHECK(cm.component_gap[1] == 0.0);
  // J_1 = rho_1 (grad S - A) matches rho u up to spectral differentiation.
  CHECK(cm.momentum_gap < 1e-8);
  CHECK(cm.component_gap[0] == doctest::Approx(cm.momentum_gap));
}
