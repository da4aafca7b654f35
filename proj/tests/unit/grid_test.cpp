#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rotgp/cutoff.hpp"
#include "rotgp/errors.hpp"
#include "rotgp/spectral.hpp"

using namespace rotgp;
using std::numbers::pi;

namespace {

double rel_max_err(const ScalarField& a, const ScalarField& b) {
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    err = std::max(err, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return err / std::max(scale, 1e-300);
}

}  // namespace

TEST_CASE("grid geometry") {
  const GridPtr g = make_grid(2.0 * pi, 8);
  CHECK(g->spacing() == doctest::Approx(pi / 4.0));
  CHECK(g->coord(0) == doctest::Approx(-pi));
  CHECK(g->count() == 64u);
  CHECK(g->index(3, 2) == 2u * 8u + 3u);
  const Vec2 x = g->node(g->index(3, 2));
  CHECK(x.x == doctest::Approx(-pi + 3.0 * pi / 4.0));
  CHECK(x.y == doctest::Approx(-pi + 2.0 * pi / 4.0));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(10.0, 7), ConfigError);
  CHECK_THROWS_AS(make_grid(10.0, 6), ConfigError);
  CHECK_THROWS_AS(make_grid(-1.0, 16), ConfigError);

  ObstacleSpec disk{ObstacleKind::disk, {}, 1.0, 0.0};
  CHECK_NOTHROW(make_grid(40.0, 256, disk));
  disk.radius = 6.0;
  CHECK_THROWS_AS(make_grid(20.0, 64, disk), ConfigError);
}

TEST_CASE("wrap maps points into the box") {
  const GridPtr g = make_grid(4.0, 16);
  const Vec2 w = g->wrap({2.5, -3.0});
  CHECK(w.x == doctest::Approx(-1.5));
  CHECK(w.y == doctest::Approx(1.0));
}

TEST_CASE("gradient of a resolved mode") {
  const double L = 7.0;
  const GridPtr g = make_grid(L, 32);
  const double k = 2.0 * pi / L;
  const ScalarField f = sample(g, [&](Vec2 x) { return std::sin(k * x.x); });
  const VectorField df = grad(f);
  const ScalarField expect = sample(g, [&](Vec2 x) { return k * std::cos(k * x.x); });
  CHECK(rel_max_err(df.x, expect) < 1e-12);
  CHECK(max_abs(df.y) < 1e-12);
}

TEST_CASE("curl of a rotating test field") {
  const double L = 5.0;
  const GridPtr g = make_grid(L, 32);
  const double k = 2.0 * pi / L;
  const VectorField v = sample_vector(g, [&](Vec2 x) { return Vec2{-std::sin(k * x.y), std::sin(k * x.x)} * (1.0 / k); });
  const ScalarField expect = sample(g, [&](Vec2 x) { return std::cos(k * x.x) + std::cos(k * x.y); });
  CHECK(rel_max_err(curl2d(v), expect) < 1e-12);
}

TEST_CASE("perpendicular gradients are divergence free") {
  const GridPtr g = make_grid(12.0, 64);
  // Periodic projection of solid rotation: stream |x|^2 / 2 under a bump.
  const ScalarField stream = sample(g, [](Vec2 x) { return 0.5 * dot(x, x) * std::exp(-dot(x, x) / 4.0); });
  CHECK(max_abs(div(perp_grad(stream))) < 1e-10);
}

TEST_CASE("curl of a gradient vanishes") {
  const GridPtr g = make_grid(10.0, 64);
  const ScalarField f = sample(g, [](Vec2 x) { return std::exp(-dot(x, x)) * (1.0 + x.x * x.y); });
  const ScalarField c = curl2d(grad(f));
  CHECK(max_abs(c) < 1e-10 * std::max(1.0, max_norm(grad(f))));
}

TEST_CASE("laplacian of a Gaussian") {
  const GridPtr g = make_grid(16.0, 128);
  const ScalarField f = sample(g, [](Vec2 x) { return std::exp(-dot(x, x)); });
  const ScalarField expect = sample(g, [](Vec2 x) { return (4.0 * dot(x, x) - 4.0) * std::exp(-dot(x, x)); });
  CHECK(rel_max_err(laplacian(f), expect) < 1e-10);
}

TEST_CASE("Parseval") {
  const GridPtr g = make_grid(6.0, 48);
  const ComplexField f = sample(g, [](Vec2 x) {
    return std::exp(-dot(x, x)) * cplx{std::cos(3.0 * x.x), std::sin(x.y)};
  });
  const double a = l2_norm(f);
  CHECK(std::abs(spectral_l2_norm(f) - a) <= 1e-12 * a);
}

TEST_CASE("translation is exact for band-limited fields") {
  const double L = 2.0 * pi;
  const GridPtr g = make_grid(L, 32);
  const ComplexField f = sample(g, [](Vec2 x) { return std::exp(cplx{0.0, 3.0 * x.x - 2.0 * x.y}) + std::cos(x.y); });
  const Vec2 s{0.37, -1.1};
  const ComplexField t = translate(f, s);
  const ComplexField expect = sample(g, [&](Vec2 x) {
    const Vec2 y = x + s;
    return std::exp(cplx{0.0, 3.0 * y.x - 2.0 * y.y}) + std::cos(y.y);
  });
  CHECK(max_abs(t - expect) < 1e-12);
}

TEST_CASE("two-thirds band") {
  const GridPtr g = make_grid(2.0 * pi, 24);
  const ComplexField low = sample(g, [](Vec2 x) { return cplx{std::cos(7.0 * x.x), 0.0}; });
  const ComplexField high = sample(g, [](Vec2 x) { return cplx{std::cos(8.0 * x.y), 0.0}; });
  CHECK(max_abs(dealias(low) - low) < 1e-13);
  CHECK(max_abs(dealias(high)) < 1e-13);

  // Modes with 3|m| < N survive. Centred on (5, 0): exp(i 12 x) stays, exp(-i 4 x) goes.
  ComplexField s = to_spectrum(sample(g, [](Vec2 x) { return std::exp(cplx{0.0, 12.0 * x.x}); }));
  dealias_spectrum(s, {5, 0});
  CHECK(spectral_l2_norm(from_spectrum(s)) > 1.0);
  s = to_spectrum(sample(g, [](Vec2 x) { return std::exp(cplx{0.0, -4.0 * x.x}); }));
  dealias_spectrum(s, {5, 0});
  CHECK(max_abs(from_spectrum(s)) < 1e-13);
}

TEST_CASE("quadrature") {
  const GridPtr g = make_grid(12.0, 64);
  const ScalarField f = sample(g, [](Vec2 x) { return std::exp(-dot(x, x)); });
  CHECK(integrate(f) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(l1_norm(f) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-12));
}

TEST_CASE("smooth step") {
  CHECK(smooth_step(0.0)[0] == 0.0);
  CHECK(smooth_step(1.0)[0] == 1.0);
  CHECK(smooth_step(0.5)[0] == doctest::Approx(0.5));
  CHECK(smooth_step(0.5)[1] == doctest::Approx(2.0));
  CHECK(smooth_step(0.5, 2.0)[1] == doctest::Approx(4.0));
  // Derivatives against centred differences.
  for (double c : {1.0, 2.0}) {
    for (double t : {0.2, 0.45, 0.8}) {
      const double h = 1e-5;
      const auto s = smooth_step(t, c), p = smooth_step(t + h, c), m = smooth_step(t - h, c);
      CHECK(s[1] == doctest::Approx((p[0] - m[0]) / (2 * h)).epsilon(1e-7));
      CHECK(s[2] == doctest::Approx((p[1] - m[1]) / (2 * h)).epsilon(1e-6));
      CHECK(s[3] == doctest::Approx((p[2] - m[2]) / (2 * h)).epsilon(1e-5));
    }
  }
}

TEST_CASE("cutoff function") {
  const GridPtr g = make_grid(40.0, 256);
  const double R = 5.0;
  const CutoffField chi = build_cutoff(g, R);
  CHECK(chi.profile(R / 2)[0] == 0.0);
  CHECK(chi.profile(3 * R)[0] == 1.0);

  double lo = 1.0, hi = 0.0, slope = 0.0;
  for (std::size_t i = 0; i < g->count(); ++i) {
    const double r = norm(g->node(i));
    if (r <= R) CHECK(chi.values[i] == 0.0);
    if (r >= 2 * R) CHECK(chi.values[i] == 1.0);
    lo = std::min(lo, chi.values[i]);
    hi = std::max(hi, chi.values[i]);
    slope = std::max(slope, norm(chi.gradient[i]));
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 1.0);
  CHECK(slope <= (2.0 / R) * (1.0 + 1e-2));

  // Analytic gradient against the spectral one (chi is smooth, not band-limited).
  const VectorField sg = grad(chi.values);
  CHECK(max_norm(VectorField(sg.x - chi.gradient.x, sg.y - chi.gradient.y)) < 1e-3 * (2.0 / R));
}

TEST_CASE("cutoff validation") {
  const GridPtr g = make_grid(12.8, 64);
  CHECK(default_cutoff_radius(*g) == doctest::Approx(1.6));
  CHECK_THROWS_AS(build_cutoff(g, 3.3), ConfigError);

  const GridPtr d = make_grid(40.0, 128, {ObstacleKind::disk, {1.0, 0.0}, 1.5, 10.0});
  CHECK(default_cutoff_radius(*d) >= 5.0);
  CHECK_THROWS_AS(build_cutoff(d, 2.0), ConfigError);
  CHECK_NOTHROW(build_cutoff(d, 5.0));
}

TEST_CASE("laplacian of directional cutoff derivative") {
  // Third derivatives of chi need a fine grid before the spectral value settles.
  const GridPtr g = make_grid(24.0, 512);
  const CutoffField chi = build_cutoff(g, 3.0);
  const Vec2 u{0.7, -0.2};
  ScalarField dir(g);
  for (std::size_t i = 0; i < g->count(); ++i) dir[i] = dot(u, chi.gradient[i]);
  const ScalarField exact = chi.laplacian_of_directional(u);
  CHECK(max_abs(exact - laplacian(dir)) < 1e-3 * max_abs(exact));
}
