#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotgp/errors.hpp"
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

WavePair constant_phi(const GridPtr& g, std::array<double, 2> a) {
  return {Frame::phi, 0.0, {}, {ComplexField(g, std::sqrt(a[0])), ComplexField(g, std::sqrt(a[1]))}};
}

double gap(const WavePair& a, const WavePair& b) {
  return std::max(max_abs(a.component[0] - b.component[0]), max_abs(a.component[1] - b.component[1]));
}

// Smooth phi-frame data from the canonical family.
WavePair smooth_phi(const Model& m) {
  FamilyShape shape;
  const CanonicalData c = canonical_family(m.params, *m.field, shape);
  return forward(madelung(c.data, m.params), m.params);
}

}  // namespace

TEST_CASE("covariant gradient") {
  const GridPtr g = make_grid(2.0 * pi, 32);
  const ComplexField one(g, cplx{1.0});
  ComplexVector d = covariant_grad(one, VectorField(g), 0.1, 0.0);
  CHECK(max_abs(d.x) < 1e-15);
  CHECK(max_abs(d.y) < 1e-15);

  d = covariant_grad(one, VectorField(g, {0.0, 1.0}), 0.3, 0.0);
  CHECK(max_abs(d.x) == 0.0);
  CHECK(max_abs(d.y - ComplexField(g, -I)) < 1e-15);

  // U L / (2 pi eps) = (3, -2).
  const double eps = 0.5;
  const Vec2 u{1.5, -1.0};
  const ComplexField wave = sample(g, [&](Vec2 x) { return std::exp(I * (dot(u, x) / eps)); });
  d = covariant_grad(wave, VectorField(g), eps, 0.0);
  CHECK(max_abs(d.x - ComplexField(g, [&] {
          std::vector<cplx> v(g->count());
          for (std::size_t i = 0; i < v.size(); ++i) v[i] = I * u.x * wave[i];
          return v;
        }())) < 1e-12);
  CHECK(max_abs(d.y - ComplexField(g, [&] {
          std::vector<cplx> v(g->count());
          for (std::size_t i = 0; i < v.size(); ++i) v[i] = I * u.y * wave[i];
          return v;
        }())) < 1e-12);
}

TEST_CASE("magnetic laplacian") {
  const GridPtr g = make_grid(14.0, 64);
  const ComplexField one(g, cplx{1.0});
  CHECK(max_abs(magnetic_laplacian(one, VectorField(g), 0.1, 0.0)) < 1e-15);
  CHECK(max_abs(magnetic_laplacian(one, VectorField(g, {0.0, 1.0}), 0.1, 0.0) + one) < 1e-15);

  // Against the covariant gradient applied twice, for a divergence-free A.
  for (double eta : {0.0, 1.0}) {
    const double eps = 0.2;
    const VectorField a = perp_grad(sample(g, [](Vec2 x) { return 0.8 * std::exp(-dot(x, x) / 2.0); }));
    const ComplexField f = sample(g, [](Vec2 x) { return std::exp(-dot(x, x)) * std::exp(I * (x.x - 0.5 * x.y)); });
    const ComplexVector d = covariant_grad(f, a, eps, eta);
    const ComplexVector dx = covariant_grad(d.x, a, eps, eta);
    const ComplexVector dy = covariant_grad(d.y, a, eps, eta);
    const ComplexField twice = dx.x + dy.y;
    const ComplexField lap = magnetic_laplacian(f, a, eps, eta);
    CHECK(max_abs(lap - twice) < 1e-10 * max_abs(lap));
  }
}

TEST_CASE("far-field state is a fixed point") {
  const GridPtr g = make_grid(12.8, 64);
  SimParams p;
  p.u_inf = {0.5, 0.0};
  p.a_inf = {0.2, -0.1};
  p.v_inf = 0.3;
  p.gamma = 2.0;
  TrapPotentialSpec trap;
  trap.v_inf = 0.3;
  const Model m = make_model(p, constant_field(p.a_inf), trap, g);
  const GpSolver solver(m, Frame::phi, {});
  const WavePair start = constant_phi(g, p.a);
  const auto rhs = solver.equation_rhs(start);
  CHECK(max_abs(rhs[0]) < 1e-14);
  CHECK(max_abs(rhs[1]) < 1e-14);

  const GpTrajectory traj = solver.evolve(start, 1.0);
  CHECK(traj.snapshots.back().time == doctest::Approx(1.0));
  CHECK(gap(traj.snapshots.back(), start) < 1e-10);

  SimParams q = p;
  q.mode = ParamMode::exploratory;
  q.a = {0.6, 0.4};
  const GpSolver mixed(make_model(q, constant_field(q.a_inf), trap, g), Frame::phi, {});
  const auto rhs2 = mixed.equation_rhs(constant_phi(g, q.a));
  CHECK(max_abs(rhs2[0]) < 1e-14);
  CHECK(max_abs(rhs2[1]) < 1e-14);
}

TEST_CASE("plane wave in the original frame") {
  // U L / (2 pi eps) = (4, 2): the raw plane wave is periodic.
  const double L = 2.0 * pi, eps = 0.25;
  const GridPtr g = make_grid(L, 32);
  SimParams p;
  p.epsilon = eps;
  p.u_inf = {1.0, 0.5};
  p.v_inf = 0.2;
  TrapPotentialSpec trap;
  trap.v_inf = p.v_inf;
  const Model m = make_model(p, constant_field({}), trap, g);
  const double energy = 0.5 * dot(p.u_inf, p.u_inf) + p.v_inf + 1.0;
  const double horizon = 0.5;

  auto exact = [&](double t) {
    return sample(g, [&](Vec2 x) { return std::exp(I * ((dot(p.u_inf, x) - energy * t) / eps)); });
  };
  const WavePair start{Frame::psi, 0.0, {}, {exact(0.0), ComplexField(g)}};
  const GpSolver solver(m, Frame::psi, {});
  const GpTrajectory traj = solver.evolve(start, horizon, {0.05});
  const ComplexField expect = exact(horizon);
  CHECK(max_abs(traj.snapshots.back().component[0] - expect) < 1e-6);
  CHECK(max_abs(traj.snapshots.back().component[1]) == 0.0);

  // In the moving frame the wave is the far-field state, so the residual
  // measures the integration error alone.
  const GpSolver phi_solver(m, Frame::phi, {});
  std::array<WavePair, 3> near;
  for (int j = 0; j < 3; ++j) near[j] = forward(traj.snapshots[4 + j], p);
  const auto res = residual_phisystm(phi_solver, near[0], near[1], near[2]);
  CHECK(res[0] < 1e-6);
  CHECK(res[1] == 0.0);
}

TEST_CASE("fixed point has no residual") {
  const GridPtr g = make_grid(12.8, 32);
  SimParams p;
  p.a_inf = {0.0, 0.4};
  const GpSolver solver(make_model(p, constant_field(p.a_inf), {}, g), Frame::phi, {});
  WavePair a = constant_phi(g, p.a), b = a, c = a;
  b.time = 0.1;
  c.time = 0.2;
  const auto res = residual_phisystm(solver, a, b, c);
  CHECK(res[0] < 1e-13);
  CHECK(res[1] == 0.0);

  // A varying field does move the constant state.
  const GpSolver rotating(make_model(SimParams{}, rotating_field(), {}, g), Frame::phi, {});
  CHECK(residual_phisystm(rotating, a, b, c)[0] > 1e-3);
}

TEST_CASE("fourth-order time stepping") {
  const GridPtr g = make_grid(12.8, 64);
  SimParams p;
  p.u_inf = {0.5, 0.0};
  const Model m = make_model(p, rotating_field(), {}, g);
  const WavePair start = smooth_phi(m);
  const double horizon = 0.1;

  auto run = [&](double dt) {
    StepperConfig cfg;
    cfg.dt = dt;
    return GpSolver(m, Frame::phi, cfg).evolve(start, horizon).snapshots.back();
  };
  const WavePair ref = run(0.00125);
  const double coarse = gap(run(0.02), ref);
  const double fine = gap(run(0.01), ref);
  CHECK(coarse > 1e-12);
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("residual check converges with snapshot spacing") {
  const GridPtr g = make_grid(12.8, 128);
  SimParams p;
  p.u_inf = {0.5, 0.0};
  const Model m = make_model(p, rotating_field(), {}, g);
  const GpSolver solver(m, Frame::phi, {});
  const WavePair start = smooth_phi(m);
  std::array<double, 2> res{};
  for (int level = 0; level < 2; ++level) {
    const double spacing = level == 0 ? 0.004 : 0.002;
    const GpTrajectory traj = solver.evolve(start, 0.05 + spacing, {spacing});
    res[level] = residual_phisystm(solver, traj, 0.05)[0];
  }
  CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("shifted mass is conserved") {
  const GridPtr g = make_grid(12.8, 64);
  SimParams p;
  p.u_inf = {0.5, 0.0};
  const Model m = make_model(p, rotating_field(), {}, g);
  const WavePair start = smooth_phi(m);
  const WavePair end = GpSolver(m, Frame::phi, {}).evolve(start, 0.1).snapshots.back();
  auto mass = [&](const WavePair& w) {
    ScalarField d(g);
    for (std::size_t i = 0; i < g->count(); ++i) d[i] = std::norm(w.component[0][i]) - 1.0;
    return integrate(d);
  };
  CHECK(std::abs(mass(end) - mass(start)) / 0.1 < 1e-8);
}

TEST_CASE("swapping the components commutes with evolution") {
  const GridPtr g = make_grid(12.8, 64);
  SimParams p;
  p.gamma = 2.0;
  p.u_inf = {0.5, 0.0};
  const Model m = make_model(p, rotating_field(), {}, g);
  SimParams q = p;
  q.a = {0.0, 1.0};
  const Model swapped = make_model(q, rotating_field(), {}, g);

  const WavePair start = smooth_phi(m);
  WavePair mirror = start;
  std::swap(mirror.component[0], mirror.component[1]);
  StepperConfig cfg;
  cfg.dt = 0.005;
  const WavePair a = GpSolver(m, Frame::phi, cfg).evolve(start, 0.05).snapshots.back();
  WavePair b = GpSolver(swapped, Frame::phi, cfg).evolve(mirror, 0.05).snapshots.back();
  std::swap(b.component[0], b.component[1]);
  CHECK(gap(a, b) == 0.0);
}

TEST_CASE("solver aborts on non-finite data") {
  const GridPtr g = make_grid(12.8, 32);
  SimParams p;
  const GpSolver solver(make_model(p, rotating_field(), {}, g), Frame::phi, {});
  WavePair bad = constant_phi(g, p.a);
  bad.component[0][3] = cplx{std::nan(""), 0.0};
  CHECK_THROWS_AS(solver.evolve(bad, 0.1), SolverAbort);
}
