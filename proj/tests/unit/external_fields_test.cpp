#include <doctest.h>

#include <cmath>

#include "rotgp/errors.hpp"
#include "rotgp/external_fields.hpp"
#include "rotgp/spectral.hpp"

using namespace rotgp;

namespace {

// Node index closest to a point.
std::size_t nearest(const Grid2D& g, Vec2 p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.count(); ++i)
    if (norm(g.node(i) - p) < norm(g.node(best) - p)) best = i;
  return best;
}

RotatingFieldSpec example(double r1, double r2) {
  RotatingFieldSpec s;
  s.r1 = r1;
  s.r2 = r2;
  return s;
}

}  // namespace

TEST_CASE("solid rotation inside the inner radius") {
  const GridPtr g = make_grid(8.0, 256);
  const VectorField a = eval_A(example(2.0, 3.5), g, 0.0);
  const std::size_t i = nearest(*g, {0.5, 0.0});
  REQUIRE(norm(g->node(i) - Vec2{0.5, 0.0}) < 1e-12);
  CHECK(std::abs(a[i].x) < 1e-7);
  CHECK(std::abs(a[i].y - 0.5) < 1e-7);
  const RotatingField f(example(2.0, 3.5), g);
  CHECK(f.pattern_at({0.5, 0.0}).x == 0.0);
  CHECK(f.pattern_at({0.5, 0.0}).y == doctest::Approx(0.5).epsilon(1e-15));

  const ScalarField c = eval_curl_A(example(2.0, 3.5), g, 0.0);
  for (std::size_t k = 0; k < g->count(); ++k)
    if (norm(g->node(k)) <= 2.0) CHECK(std::abs(c[k] - 2.0) < 1e-6);
}

TEST_CASE("constant far field outside the outer radius") {
  const GridPtr g = make_grid(12.0, 256);
  RotatingFieldSpec s = example(1.0, 4.0);
  s.a_inf = {0.0, 1.0};
  const RotatingField f(s, g);
  const Vec2 far{3.5, 3.5};  // |x| = 4.95 > r2 + 0.9
  CHECK(f.pattern_at(far).x == doctest::Approx(0.0));
  CHECK(f.pattern_at(far).y == doctest::Approx(1.0));

  // Exact past r2 analytically; the grid field carries spectral error only.
  const VectorField a = f.potential(0.0);
  double edge = 0.0, grid_edge = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i)
    if (norm(g->node(i)) >= 5.0) {
      edge = std::max(edge, norm(f.pattern_at(g->node(i)) - s.a_inf));
      grid_edge = std::max(grid_edge, norm(a[i] - s.a_inf));
    }
  CHECK(edge < 1e-10);
  CHECK(grid_edge < 1e-8);
}

TEST_CASE("grid field matches the analytic pattern") {
  const GridPtr g = make_grid(12.8, 128);
  RotatingFieldSpec s = example(0.5, 5.5);
  s.a_inf = {0.3, -0.2};
  const RotatingField f(s, g);
  const VectorField a = f.potential(0.0);
  const ScalarField c = f.curl(0.0);
  double err = 0.0, cerr = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i) {
    err = std::max(err, norm(a[i] - f.pattern_at(g->node(i))));
    cerr = std::max(cerr, std::abs(c[i] - f.pattern_curl_at(g->node(i))));
  }
  CHECK(err < 1e-8);
  CHECK(cerr < 1e-6);
}

TEST_CASE("divergence free to spectral tolerance") {
  const GridPtr g = make_grid(12.8, 128);
  for (double r2 : {2.5, 5.5}) {
    RotatingFieldSpec s = example(0.5, r2);
    s.a_inf = {0.2, 0.1};
    const ScalarField d = div(eval_A(s, g, 0.0));
    CHECK(l2_norm(d) < 1e-8);
  }
}

TEST_CASE("shifted evaluation") {
  const GridPtr g = make_grid(12.8, 256);
  const RotatingField f(example(0.5, 4.0), g);
  const Vec2 shift{0.37, -0.21};
  const VectorField a = f.potential(0.0, shift);
  double err = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i) err = std::max(err, norm(a[i] - f.pattern_at(g->wrap(g->node(i) + shift))));
  CHECK(err < 1e-8);
}

TEST_CASE("time derivative of the field") {
  const GridPtr g = make_grid(12.8, 64);
  RotatingField steady(example(0.5, 4.0), g);
  CHECK(max_norm(steady.rate(0.7)) == 0.0);

  RotatingFieldSpec s = example(0.5, 4.0);
  s.omega = {1.0, 0.1, 1.0};
  const RotatingField f(s, g);
  const VectorField pattern = f.potential(0.0);  // omega(0) = 1
  const VectorField r0 = f.rate(0.0);
  double err = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i) err = std::max(err, norm(r0[i] - 0.1 * pattern[i]));
  CHECK(err < 1e-14);

  const double t = 0.3, h = 1e-4;
  const VectorField p = f.potential(t + h), m = f.potential(t - h), r = f.rate(t);
  double fd = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i) fd = std::max(fd, norm(r[i] - (1.0 / (2.0 * h)) * (p[i] - m[i])));
  CHECK(fd < 1e-7);
}

TEST_CASE("uniform constant mode") {
  const GridPtr g = make_grid(6.0, 32);
  RotatingFieldSpec s;
  s.mode = RotatingMode::uniform_constant;
  s.a_inf = {0.4, -0.1};
  const VectorField a = eval_A(s, g, 0.0);
  for (std::size_t i = 0; i < g->count(); ++i) CHECK(norm(a[i] - s.a_inf) < 1e-15);
  CHECK(max_abs(eval_curl_A(s, g, 0.0)) < 1e-15);
}

TEST_CASE("rotating field validation") {
  CHECK_THROWS_AS(example(2.0, 1.0).validate(10.0), ConfigError);
  CHECK_THROWS_AS(example(1.0, 4.9).validate(10.0), ConfigError);
  CHECK_NOTHROW(example(1.0, 4.0).validate(10.0));
  RotatingFieldSpec s = example(1.0, 3.0);
  s.a_inf = {1.0, 0.0};
  s.omega.base = 0.5;
  CHECK_THROWS_AS(s.validate(10.0), ConfigError);
}

TEST_CASE("trap potential") {
  const GridPtr g = make_grid(12.0, 64);
  TrapPotentialSpec flat;
  flat.v_inf = 0.5;
  const ScalarField v = eval_V(flat, g, 0.0);
  for (std::size_t i = 0; i < g->count(); ++i) CHECK(v[i] == 0.5);
  CHECK(max_norm(eval_dV(flat, g, 0.0).grad) == 0.0);

  TrapPotentialSpec bump;
  bump.v_inf = 0.25;
  bump.amplitude = 1.0;
  CHECK(bump.value_at(0.0, {}) == doctest::Approx(1.25));
  const ScalarField vb = eval_V(bump, g, 0.0);
  CHECK(vb[g->index(32, 32)] == doctest::Approx(1.25));

  const PotentialDerivatives d = eval_dV(bump, g, 0.0);
  const VectorField sg = grad(vb);
  CHECK(max_norm(VectorField(sg.x - d.grad.x, sg.y - d.grad.y)) < 1e-8);

  double edge = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i)
    if (std::max(std::abs(g->node(i).x), std::abs(g->node(i).y)) >= 5.5) edge = std::max(edge, std::abs(vb[i] - 0.25));
  CHECK(edge < 1e-10);
}

TEST_CASE("time-dependent trap") {
  const GridPtr g = make_grid(12.0, 32);
  TrapPotentialSpec s;
  s.amplitude = 0.3;
  s.time_amplitude = 0.5;
  s.time_frequency = 2.0;
  const double t = 0.4, h = 1e-5;
  const ScalarField p = eval_V(s, g, t + h), m = eval_V(s, g, t - h);
  const ScalarField dt = eval_dV(s, g, t).dt;
  double err = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i) err = std::max(err, std::abs(dt[i] - (p[i] - m[i]) / (2.0 * h)));
  CHECK(err < 1e-8);
}

TEST_CASE("trap validation") {
  TrapPotentialSpec wide;
  wide.amplitude = 1.0;
  wide.width = 3.0;
  CHECK_THROWS_AS(wide.validate(10.0), ConfigError);
}
