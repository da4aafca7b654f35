#include "rotgp/external_fields.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "rotgp/cutoff.hpp"
#include "rotgp/errors.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace {

constexpr cplx I{0.0, 1.0};

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGaussX{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussW{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

// Steepness of the blend step; 2 minimizes the spectral tail of the field
// for blend widths of a few units on typical grids.
constexpr double kBlendSteepness = 2.0;

struct Blend {
  double r1, r2;
  std::array<double, 4> at(double r) const noexcept {
    const double w = r2 - r1;
    const auto s = smooth_step((r - r1) / w, kBlendSteepness);
    return {s[0], s[1] / w, s[2] / (w * w), s[3] / (w * w * w)};
  }
  // F(r) with F' = r (1 - b), F(0) = 0.
  double radial_stream(double r) const noexcept {
    if (r <= r1) return 0.5 * r * r;
    const double top = std::min(r, r2);
    constexpr int panels = 16;
    const double hp = (top - r1) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double mid = r1 + (p + 0.5) * hp;
      for (std::size_t q = 0; q < kGaussX.size(); ++q) {
        const double s = mid + 0.5 * hp * kGaussX[q];
        acc += kGaussW[q] * s * (1.0 - at(s)[0]);
      }
    }
    return 0.5 * r1 * r1 + 0.5 * hp * acc;
  }
};

double linear_stream(Vec2 a_inf, Vec2 x) { return a_inf.y * x.x - a_inf.x * x.y; }

double gaussian(const TrapPotentialSpec& s, Vec2 d) {
  return std::exp(-dot(d, d) / (s.width * s.width));
}

double time_factor(const TrapPotentialSpec& s, double t) {
  return 1.0 + s.time_amplitude * std::sin(s.time_frequency * t);
}

// Transition of the obstacle indicator: from R0 to R0 + delta.
double obstacle_delta(const Grid2D& g) { return std::max(3.0 * g.spacing(), 0.2 * g.obstacle().radius); }

}  // namespace

double OmegaProfile::value(double t) const noexcept { return base + amplitude * std::sin(frequency * t); }
double OmegaProfile::rate(double t) const noexcept { return amplitude * frequency * std::cos(frequency * t); }

void RotatingFieldSpec::validate(double box_length) const {
  if (mode == RotatingMode::rotating_blend) {
    if (!(r1 > 0.0) || !(r1 < r2)) throw ConfigError("rotating field radii must satisfy 0 < r1 < r2");
    if (!(r2 <= 7.0 * box_length / 16.0))
      throw ConfigError("rotating field radius r2 = " + std::to_string(r2) + " leaves no margin in a box of side " +
                        std::to_string(box_length));
  }
  if (mode == RotatingMode::rotating_blend && (a_inf.x != 0.0 || a_inf.y != 0.0) && !omega.is_unit())
    throw ConfigError("a nonzero far-field potential requires a constant omega = 1");
  if (!std::isfinite(omega.base) || !std::isfinite(omega.amplitude) || !std::isfinite(omega.frequency))
    throw ConfigError("omega profile must be finite");
}

RotatingField::RotatingField(RotatingFieldSpec spec, GridPtr grid) : spec_(spec), grid_(std::move(grid)) {
  spec_.validate(grid_->length());
  ScalarField stream(grid_);
  if (spec_.mode == RotatingMode::rotating_blend) {
    const Blend blend{spec_.r1, spec_.r2};
    const double outer = blend.radial_stream(spec_.r2);
    for (std::size_t i = 0; i < grid_->count(); ++i) {
      const Vec2 x = grid_->node(i);
      const double r = norm(x);
      if (r >= spec_.r2) continue;
      const double b = blend.at(r)[0];
      stream[i] = blend.radial_stream(r) - outer + (b - 1.0) * linear_stream(spec_.a_inf, x);
    }
  }
  stream_hat_ = to_spectrum(stream);
}

VectorField RotatingField::pattern(Vec2 shift) const {
  const Grid2D& g = *grid_;
  const int n = g.size();
  const auto kd = g.deriv_wavenumbers();
  const auto ks = g.shift_wavenumbers();
  ComplexField d1(grid_), d2(grid_);
  for (int i2 = 0; i2 < n; ++i2) {
    for (int i1 = 0; i1 < n; ++i1) {
      const std::size_t k = g.index(i1, i2);
      const cplx s = stream_hat_[k] * std::polar(1.0, ks[i1] * shift.x + ks[i2] * shift.y);
      d1[k] = I * kd[i1] * s;
      d2[k] = I * kd[i2] * s;
    }
  }
  const ComplexField a = from_spectrum(d2);
  const ComplexField b = from_spectrum(d1);
  VectorField out(grid_);
  for (std::size_t i = 0; i < g.count(); ++i) {
    out.x[i] = -a[i].real() + spec_.a_inf.x;
    out.y[i] = b[i].real() + spec_.a_inf.y;
  }
  return out;
}

VectorField RotatingField::potential(double t, Vec2 shift) const {
  VectorField p = pattern(shift);
  const double w = spec_.omega.value(t);
  p.x *= w;
  p.y *= w;
  return p;
}

VectorField RotatingField::rate(double t, Vec2 shift) const {
  const double w = spec_.omega.rate(t);
  if (w == 0.0) return VectorField(grid_);
  VectorField p = pattern(shift);
  p.x *= w;
  p.y *= w;
  return p;
}

ScalarField RotatingField::curl(double t, Vec2 shift) const {
  const Grid2D& g = *grid_;
  const int n = g.size();
  const auto kd = g.deriv_wavenumbers();
  const auto ks = g.shift_wavenumbers();
  const double w = spec_.omega.value(t);
  ComplexField lap(grid_);
  for (int i2 = 0; i2 < n; ++i2) {
    for (int i1 = 0; i1 < n; ++i1) {
      const std::size_t k = g.index(i1, i2);
      const double k2 = kd[i1] * kd[i1] + kd[i2] * kd[i2];
      lap[k] = -w * k2 * stream_hat_[k] * std::polar(1.0, ks[i1] * shift.x + ks[i2] * shift.y);
    }
  }
  return real_from_spectrum(lap);
}

Vec2 RotatingField::pattern_at(Vec2 x) const {
  if (spec_.mode == RotatingMode::uniform_constant) return spec_.a_inf;
  const double r = norm(x);
  if (r >= spec_.r2) return spec_.a_inf;
  const Blend blend{spec_.r1, spec_.r2};
  const auto b = blend.at(r);
  Vec2 v = (1.0 - b[0]) * perp(x) + b[0] * spec_.a_inf;
  if (r > 0.0) v += (linear_stream(spec_.a_inf, x) * b[1] / r) * perp(x);
  return v;
}

double RotatingField::pattern_curl_at(Vec2 x) const {
  if (spec_.mode == RotatingMode::uniform_constant) return 0.0;
  const double r = norm(x);
  if (r >= spec_.r2) return 0.0;
  const Blend blend{spec_.r1, spec_.r2};
  const auto b = blend.at(r);
  if (r == 0.0) return 2.0;
  const double ell = linear_stream(spec_.a_inf, x);
  const Vec2 grad_ell{spec_.a_inf.y, -spec_.a_inf.x};
  return 2.0 * (1.0 - b[0]) - r * b[1] + ell * (b[2] + b[1] / r) + 2.0 * b[1] * dot(x, grad_ell) / r;
}

void TrapPotentialSpec::validate(double box_length) const {
  if (!(width > 0.0)) throw ConfigError("trap width must be positive");
  if (!std::isfinite(v_inf) || !std::isfinite(amplitude)) throw ConfigError("trap parameters must be finite");
  if (amplitude != 0.0) {
    // The Gaussian must have decayed at the box edge.
    const double edge = 0.5 * box_length - std::max(std::abs(center.x), std::abs(center.y));
    if (edge <= 0.0 || std::abs(amplitude) * std::exp(-(edge * edge) / (width * width)) > 1e-12)
      throw ConfigError("trap profile does not decay inside the box");
  }
}

double TrapPotentialSpec::value_at(double t, Vec2 x) const noexcept {
  return v_inf + amplitude * time_factor(*this, t) * gaussian(*this, x - center);
}

VectorField eval_A(const RotatingFieldSpec& spec, const GridPtr& grid, double t) {
  return RotatingField(spec, grid).potential(t);
}

ScalarField eval_curl_A(const RotatingFieldSpec& spec, const GridPtr& grid, double t) {
  return RotatingField(spec, grid).curl(t);
}

ScalarField eval_V(const TrapPotentialSpec& spec, const GridPtr& grid, double t, Vec2 shift) {
  ScalarField v(grid);
  for (std::size_t i = 0; i < grid->count(); ++i) v[i] = spec.value_at(t, grid->wrap(grid->node(i) + shift));
  return v;
}

PotentialDerivatives eval_dV(const TrapPotentialSpec& spec, const GridPtr& grid, double t, Vec2 shift) {
  PotentialDerivatives d{ScalarField(grid), VectorField(grid)};
  const double tf = time_factor(spec, t);
  const double rate = spec.amplitude * spec.time_amplitude * spec.time_frequency * std::cos(spec.time_frequency * t);
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Vec2 dx = grid->wrap(grid->node(i) + shift) - spec.center;
    const double gau = gaussian(spec, dx);
    d.dt[i] = rate * gau;
    d.grad.set(i, (-2.0 * spec.amplitude * tf * gau / (spec.width * spec.width)) * dx);
  }
  return d;
}

PenaltyField penalty_field(const GridPtr& grid, Vec2 shift) {
  PenaltyField p{ScalarField(grid), VectorField(grid), VectorField(grid)};
  const ObstacleSpec& ob = grid->obstacle();
  if (ob.kind != ObstacleKind::disk) return p;
  const double delta = obstacle_delta(*grid);
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const Vec2 dx = grid->wrap(grid->node(i) + shift) - ob.center;
    const double r = norm(dx);
    const auto s = smooth_step((r - ob.radius) / delta);
    p.mask[i] = 1.0 - s[0];
    if (r > 0.0) {
      p.normal.set(i, (1.0 / r) * dx);
      p.mask_grad.set(i, (-s[1] / (delta * r)) * dx);
    }
  }
  return p;
}

}  // namespace rotgp
