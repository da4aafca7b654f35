#include "rotgp/spectral.hpp"

#include <cmath>

namespace rotgp {
namespace {

constexpr cplx I{0.0, 1.0};

ComplexField complexify(const ScalarField& f) {
  ComplexField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

// Apply fn(k1, k2, value) to every mode of a spectrum.
template <class Fn>
void for_each_mode(ComplexField& fhat, Fn&& fn) {
  const Grid2D& g = fhat.layout();
  const int n = g.size();
  for (int i2 = 0; i2 < n; ++i2)
    for (int i1 = 0; i1 < n; ++i1) fn(i1, i2, fhat[g.index(i1, i2)]);
}

ComplexField derivative_spectrum(const ComplexField& fhat, int axis) {
  ComplexField out = fhat;
  const auto kd = fhat.layout().deriv_wavenumbers();
  for_each_mode(out, [&](int i1, int i2, cplx& v) { v *= I * kd[axis == 0 ? i1 : i2]; });
  return out;
}

}  // namespace

ComplexField to_spectrum(const ComplexField& f) {
  ComplexField out(f.grid());
  f.layout().fft().forward(f.data(), out.data());
  return out;
}

ComplexField to_spectrum(const ScalarField& f) { return to_spectrum(complexify(f)); }

ComplexField from_spectrum(const ComplexField& fhat) {
  ComplexField out(fhat.grid());
  fhat.layout().fft().backward(fhat.data(), out.data());
  return out;
}

ScalarField real_from_spectrum(const ComplexField& fhat) {
  const ComplexField c = from_spectrum(fhat);
  ScalarField out(fhat.grid());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

VectorField grad(const ScalarField& f) {
  const ComplexField fhat = to_spectrum(f);
  return {real_from_spectrum(derivative_spectrum(fhat, 0)), real_from_spectrum(derivative_spectrum(fhat, 1))};
}

ComplexVector grad(const ComplexField& f) {
  const ComplexField fhat = to_spectrum(f);
  return {from_spectrum(derivative_spectrum(fhat, 0)), from_spectrum(derivative_spectrum(fhat, 1))};
}

ScalarField partial(const ScalarField& f, int axis) {
  return real_from_spectrum(derivative_spectrum(to_spectrum(f), axis));
}

ScalarField div(const VectorField& v) {
  ComplexField a = derivative_spectrum(to_spectrum(v.x), 0);
  a += derivative_spectrum(to_spectrum(v.y), 1);
  return real_from_spectrum(a);
}

ScalarField curl2d(const VectorField& v) {
  ComplexField a = derivative_spectrum(to_spectrum(v.y), 0);
  a -= derivative_spectrum(to_spectrum(v.x), 1);
  return real_from_spectrum(a);
}

VectorField perp_grad(const ScalarField& stream) {
  const ComplexField s = to_spectrum(stream);
  ScalarField vx = real_from_spectrum(derivative_spectrum(s, 1));
  vx *= -1.0;
  return {std::move(vx), real_from_spectrum(derivative_spectrum(s, 0))};
}

ComplexField laplacian(const ComplexField& f) {
  ComplexField fhat = to_spectrum(f);
  const auto k2 = f.layout().wavenumbers_sq();
  for_each_mode(fhat, [&](int i1, int i2, cplx& v) { v *= -(k2[i1] + k2[i2]); });
  return from_spectrum(fhat);
}

ScalarField laplacian(const ScalarField& f) {
  ComplexField fhat = to_spectrum(f);
  const auto k2 = f.layout().wavenumbers_sq();
  for_each_mode(fhat, [&](int i1, int i2, cplx& v) { v *= -(k2[i1] + k2[i2]); });
  return real_from_spectrum(fhat);
}

ComplexField translate(const ComplexField& f, Vec2 shift) {
  ComplexField fhat = to_spectrum(f);
  const auto ks = f.layout().shift_wavenumbers();
  const int n = f.layout().size();
  std::vector<cplx> p1(n), p2(n);
  for (int i = 0; i < n; ++i) {
    p1[i] = std::polar(1.0, ks[i] * shift.x);
    p2[i] = std::polar(1.0, ks[i] * shift.y);
  }
  for_each_mode(fhat, [&](int i1, int i2, cplx& v) { v *= p1[i1] * p2[i2]; });
  return from_spectrum(fhat);
}

ScalarField translate(const ScalarField& f, Vec2 shift) {
  const ComplexField c = translate(complexify(f), shift);
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

void dealias_spectrum(ComplexField& fhat) {
  const Grid2D& g = fhat.layout();
  for_each_mode(fhat, [&](int i1, int i2, cplx& v) {
    if (!g.keeps_mode(i1) || !g.keeps_mode(i2)) v = 0.0;
  });
}

void dealias_spectrum(ComplexField& fhat, std::array<int, 2> centre) {
  const Grid2D& g = fhat.layout();
  const int n = g.size();
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  for_each_mode(fhat, [&](int i1, int i2, cplx& v) {
    if (!g.keeps_mode(wrap(i1 - centre[0])) || !g.keeps_mode(wrap(i2 - centre[1]))) v = 0.0;
  });
}

ComplexField dealias(const ComplexField& f) {
  ComplexField fhat = to_spectrum(f);
  dealias_spectrum(fhat);
  return from_spectrum(fhat);
}

double spectral_tail_fraction(const ScalarField& f) {
  ComplexField fhat = to_spectrum(f);
  const int n = f.layout().size();
  auto outer = [n](int i) {
    const int m = i <= n / 2 ? i : n - i;
    return 6 * m > n;
  };
  double total = 0.0;
  double tail = 0.0;
  for_each_mode(fhat, [&](int i1, int i2, cplx& v) {
    const double e = std::norm(v);
    total += e;
    if (outer(i1) || outer(i2)) tail += e;
  });
  return total > 0.0 ? tail / total : 0.0;
}

double integrate(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.layout().cell_area();
}

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.layout().cell_area());
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const cplx& v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.layout().cell_area());
}

double l2_norm(const VectorField& v) {
  const double a = l2_norm(v.x);
  const double b = l2_norm(v.y);
  return std::sqrt(a * a + b * b);
}

double l1_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += std::abs(v);
  return s * f.layout().cell_area();
}

double spectral_l2_norm(const ComplexField& f) {
  const ComplexField fhat = to_spectrum(f);
  double s = 0.0;
  for (const cplx& v : fhat.values()) s += std::norm(v);
  const double n2 = static_cast<double>(f.size());
  return std::sqrt(s * f.layout().cell_area() / n2);
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const VectorField& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, std::hypot(v.x[i], v.y[i]));
  return m;
}

}  // namespace rotgp
