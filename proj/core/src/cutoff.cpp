#include "rotgp/cutoff.hpp"

#include <cmath>
#include <string>

#include "rotgp/errors.hpp"

namespace rotgp {

std::array<double, 4> smooth_step(double t, double steepness) noexcept {
  // Outside (1e-3, 1 - 1e-3) the step is flat to double precision.
  if (t <= 1e-3) return {0.0, 0.0, 0.0, 0.0};
  if (t >= 1.0 - 1e-3) return {1.0, 0.0, 0.0, 0.0};
  const double a = t;
  const double b = 1.0 - t;
  // s = sigma(p) with sigma the logistic function and p = c (1/b - 1/a).
  const double c = steepness;
  const double p = c * (1.0 / b - 1.0 / a);
  const double s = 1.0 / (1.0 + std::exp(-p));
  const double p1 = c * (1.0 / (a * a) + 1.0 / (b * b));
  const double p2 = c * (-2.0 / (a * a * a) + 2.0 / (b * b * b));
  const double p3 = c * (6.0 / (a * a * a * a) + 6.0 / (b * b * b * b));
  const double d1 = s * (1.0 - s);
  const double d2 = d1 * (1.0 - 2.0 * s);
  const double d3 = d2 * (1.0 - 2.0 * s) - 2.0 * d1 * d1;
  return {s, d1 * p1, d2 * p1 * p1 + d1 * p2, d3 * p1 * p1 * p1 + 3.0 * d2 * p1 * p2 + d1 * p3};
}

std::array<double, 4> CutoffField::profile(double r) const noexcept {
  const auto s = smooth_step((r - radius) / radius);
  const double inv = 1.0 / radius;
  return {s[0], s[1] * inv, s[2] * inv * inv, s[3] * inv * inv * inv};
}

ScalarField CutoffField::laplacian_of_directional(Vec2 u) const {
  // For g = chi'(r) (u.x)/r: lap g = (u.x / r) (chi''' + chi''/r - chi'/r^2).
  const GridPtr& g = values.grid();
  ScalarField out(g);
  for (std::size_t i = 0; i < g->count(); ++i) {
    const Vec2 x = g->node(i);
    const double r = norm(x);
    if (r <= radius || r >= 2.0 * radius) continue;
    const auto c = profile(r);
    out[i] = dot(u, x) / r * (c[3] + c[2] / r - c[1] / (r * r));
  }
  return out;
}

double default_cutoff_radius(const Grid2D& grid) {
  double r = grid.length() / 8.0;
  const ObstacleSpec& ob = grid.obstacle();
  if (ob.kind == ObstacleKind::disk) r = std::max(r, 2.0 * (norm(ob.center) + ob.radius));
  return r;
}

CutoffField build_cutoff(const GridPtr& grid, double radius) {
  if (!(radius > 0.0)) throw ConfigError("cutoff radius must be positive");
  if (!(2.0 * radius < 0.5 * grid->length()))
    throw ConfigError("cutoff radius too large for box: 2R = " + std::to_string(2.0 * radius) +
                      " must be below L/2");
  const ObstacleSpec& ob = grid->obstacle();
  if (ob.kind == ObstacleKind::disk && radius <= norm(ob.center) + ob.radius)
    throw ConfigError("cutoff radius must exceed the obstacle extent");

  CutoffField c{radius, ScalarField(grid), VectorField(grid)};
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Vec2 x = grid->node(i);
    const double r = norm(x);
    const auto p = c.profile(r);
    c.values[i] = p[0];
    if (r > 0.0) c.gradient.set(i, (p[1] / r) * x);
  }
  return c;
}

}  // namespace rotgp
