#include "rotgp/galilean.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rotgp/errors.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace {

constexpr cplx I{0.0, 1.0};

void require_resonant(Vec2 du, const Grid2D& g, double epsilon) {
  if (!is_resonant(du, g.length(), epsilon)) {
    std::ostringstream msg;
    msg << "carrier difference (" << du.x << ", " << du.y << ") is not periodic on a box of side " << g.length()
        << " at epsilon " << epsilon;
    throw ResonanceError(msg.str());
  }
}

// Multiply every component by exp(i dU.x / eps) * phase[k].
void modulate(WavePair& p, Vec2 du, std::array<cplx, 2> phase, double epsilon) {
  const Grid2D& g = *p.grid();
  const bool flat = du.x == 0.0 && du.y == 0.0;
  for (std::size_t i = 0; i < g.count(); ++i) {
    const cplx wave = flat ? cplx{1.0, 0.0} : std::exp(I * (dot(du, g.node(i)) / epsilon));
    for (int k = 0; k < 2; ++k) p.component[k][i] *= wave * phase[k];
  }
}

}  // namespace

Vec2 drift_velocity(const SimParams& params) { return params.drift(); }

std::array<double, 2> phase_constants(const SimParams& params) { return params.phase_constants(); }

bool is_resonant(Vec2 du, double length, double epsilon, double tol) {
  auto integral = [&](double v) {
    const double m = v * length / (2.0 * std::numbers::pi * epsilon);
    return std::abs(m - std::round(m)) <= tol * std::max(1.0, std::abs(m));
  };
  return integral(du.x) && integral(du.y);
}

WavePair rebase_carrier(const WavePair& pair, Vec2 carrier, double epsilon) {
  const Vec2 du = pair.carrier - carrier;
  WavePair out = pair;
  out.carrier = carrier;
  if (du.x == 0.0 && du.y == 0.0) return out;
  require_resonant(du, *pair.grid(), epsilon);
  modulate(out, du, {cplx{1.0}, cplx{1.0}}, epsilon);
  return out;
}

WavePair forward(const WavePair& psi, const SimParams& params) {
  if (psi.frame != Frame::psi) throw ConfigError("forward transform expects a psi-frame pair");
  const double eps = params.epsilon;
  const double t = psi.time;
  const Vec2 u = params.drift();
  const auto m = params.phase_constants();
  const Vec2 du = psi.carrier - params.u_inf;
  if (du.x != 0.0 || du.y != 0.0) require_resonant(du, *psi.grid(), eps);

  WavePair out{Frame::phi, t, Vec2{}, {translate(psi.component[0], t * u), translate(psi.component[1], t * u)}};
  std::array<cplx, 2> phase;
  for (int k = 0; k < 2; ++k) phase[k] = std::exp(I * ((dot(psi.carrier, u) * t - m[k] * t) / eps));
  modulate(out, du, phase, eps);
  return out;
}

WavePair inverse(const WavePair& phi, const SimParams& params) { return inverse(phi, params, params.u_inf); }

WavePair inverse(const WavePair& phi, const SimParams& params, Vec2 carrier) {
  if (phi.frame != Frame::phi) throw ConfigError("inverse transform expects a phi-frame pair");
  const double eps = params.epsilon;
  const double t = phi.time;
  const Vec2 u = params.drift();
  const auto m = params.phase_constants();
  const Vec2 du = params.u_inf - carrier;
  if (du.x != 0.0 || du.y != 0.0) require_resonant(du, *phi.grid(), eps);

  WavePair out{Frame::psi, t, carrier, {translate(phi.component[0], -t * u), translate(phi.component[1], -t * u)}};
  std::array<cplx, 2> phase;
  for (int k = 0; k < 2; ++k) phase[k] = std::exp(I * ((m[k] * t - dot(params.u_inf, u) * t) / eps));
  modulate(out, du, phase, eps);
  return out;
}

}  // namespace rotgp
