#include "rotgp/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "rotgp/errors.hpp"

namespace rotgp {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW's index ordering: 0..N/2 then -N/2+1..-1, with the Nyquist mode at N/2.
int signed_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

FftPlan::FftPlan(int size) : size_(size) {
  std::lock_guard lock(planner_mutex());
  auto* a = fftw_alloc_complex(static_cast<std::size_t>(size) * size);
  auto* b = fftw_alloc_complex(static_cast<std::size_t>(size) * size);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_2d(size, size, a, b, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_2d(size, size, a, b, FFTW_BACKWARD, flags);
  fftw_free(a);
  fftw_free(b);
  if (!forward_ || !backward_) throw std::runtime_error("FFTW plan creation failed");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void FftPlan::forward(const cplx* in, cplx* out) const {
  auto* i = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in));
  fftw_execute_dft(static_cast<fftw_plan>(forward_), i, reinterpret_cast<fftw_complex*>(out));
}

void FftPlan::backward(const cplx* in, cplx* out) const {
  auto* i = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in));
  fftw_execute_dft(static_cast<fftw_plan>(backward_), i, reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / (static_cast<double>(size_) * size_);
  const std::size_t n = static_cast<std::size_t>(size_) * size_;
  for (std::size_t k = 0; k < n; ++k) out[k] *= scale;
}

Grid2D::Grid2D(double length, int size, ObstacleSpec obstacle)
    : length_(length), size_(size), obstacle_(obstacle) {
  const double dk = 2.0 * std::numbers::pi / length_;
  kd_.resize(size_);
  k2_.resize(size_);
  ks_.resize(size_);
  keep_.resize(size_);
  for (int i = 0; i < size_; ++i) {
    const int m = signed_mode(i, size_);
    const bool nyquist = (i == size_ / 2);
    kd_[i] = nyquist ? 0.0 : m * dk;
    k2_[i] = (m * dk) * (m * dk);
    ks_[i] = nyquist ? -m * dk : m * dk;
    keep_[i] = 3 * std::abs(m) < size_;
  }
  plan_ = std::make_unique<FftPlan>(size_);
}

Grid2D::~Grid2D() = default;

double Grid2D::max_wavenumber() const noexcept { return std::numbers::pi / spacing(); }

Vec2 Grid2D::wrap(Vec2 p) const noexcept {
  auto w = [this](double v) {
    double r = std::fmod(v + 0.5 * length_, length_);
    if (r < 0) r += length_;
    return r - 0.5 * length_;
  };
  return {w(p.x), w(p.y)};
}

GridPtr make_grid(double length, int size, ObstacleSpec obstacle) {
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("box length must be positive");
  if (size % 2 != 0) throw ConfigError("N must be even, got " + std::to_string(size));
  if (size < 8) throw ConfigError("N must be at least 8, got " + std::to_string(size));
  if (obstacle.kind == ObstacleKind::disk) {
    if (!(obstacle.radius > 0.0)) throw ConfigError("obstacle radius must be positive");
    if (obstacle.penalization < 0.0) throw ConfigError("penalization strength must be nonnegative");
    const double reach = std::max(std::abs(obstacle.center.x), std::abs(obstacle.center.y)) + obstacle.radius;
    const double margin = 0.5 * length - reach;
    if (margin < 0.25 * length)
      throw ConfigError("obstacle too large for box: margin " + std::to_string(margin) + " < L/4");
  }
  return std::make_shared<const Grid2D>(length, size, obstacle);
}

}  // namespace rotgp
