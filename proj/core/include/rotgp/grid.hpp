#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "rotgp/vec2.hpp"

namespace rotgp {

using cplx = std::complex<double>;

enum class ObstacleKind { none, disk };

struct ObstacleSpec {
  ObstacleKind kind = ObstacleKind::none;
  Vec2 center{};
  double radius = 1.0;
  /// Strength of the penalization potential added inside the disk.
  double penalization = 0.0;
};

class FftPlan;

/// Periodic square box [-L/2, L/2)^2 sampled on N x N nodes.
///
/// Storage is row-major with x2 as the slow index: node (i1, i2) lives at
/// i2 * N + i1 and sits at (-L/2 + i1 h, -L/2 + i2 h). Spectral arrays use
/// the same layout with FFTW's frequency ordering along each axis.
class Grid2D {
 public:
  Grid2D(double length, int size, ObstacleSpec obstacle);
  ~Grid2D();
  Grid2D(const Grid2D&) = delete;
  Grid2D& operator=(const Grid2D&) = delete;

  double length() const noexcept { return length_; }
  int size() const noexcept { return size_; }
  std::size_t count() const noexcept { return static_cast<std::size_t>(size_) * size_; }
  double spacing() const noexcept { return length_ / size_; }
  double cell_area() const noexcept { return spacing() * spacing(); }
  const ObstacleSpec& obstacle() const noexcept { return obstacle_; }

  double coord(int i) const noexcept { return -0.5 * length_ + i * spacing(); }
  Vec2 node(int i1, int i2) const noexcept { return {coord(i1), coord(i2)}; }
  Vec2 node(std::size_t idx) const noexcept {
    return node(static_cast<int>(idx % size_), static_cast<int>(idx / size_));
  }
  std::size_t index(int i1, int i2) const noexcept {
    return static_cast<std::size_t>(i2) * size_ + i1;
  }

  /// Wrap a point into the fundamental box.
  Vec2 wrap(Vec2 p) const noexcept;

  /// Wavenumbers for first derivatives; the Nyquist entry is zero.
  std::span<const double> deriv_wavenumbers() const noexcept { return kd_; }
  /// Squared wavenumbers for second derivatives; the Nyquist entry is kept.
  std::span<const double> wavenumbers_sq() const noexcept { return k2_; }
  /// Signed wavenumbers used for translations (Nyquist at -N/2).
  std::span<const double> shift_wavenumbers() const noexcept { return ks_; }
  /// True for modes retained by the two-thirds rule along one axis.
  bool keeps_mode(int i) const noexcept { return keep_[static_cast<std::size_t>(i)]; }
  double max_wavenumber() const noexcept;

  const FftPlan& fft() const noexcept { return *plan_; }

 private:
  double length_;
  int size_;
  ObstacleSpec obstacle_;
  std::vector<double> kd_, k2_, ks_;
  std::vector<bool> keep_;
  std::unique_ptr<FftPlan> plan_;
};

using GridPtr = std::shared_ptr<const Grid2D>;

/// Throws ConfigError for odd or too small N, non-positive L, or an obstacle
/// that leaves less than L/4 of margin to the box edge.
GridPtr make_grid(double length, int size, ObstacleSpec obstacle = {});

/// Unnormalized 2-D complex transforms of size N x N. Execution is
/// reentrant; plans are built once under a global lock.
class FftPlan {
 public:
  explicit FftPlan(int size);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(const cplx* in, cplx* out) const;
  /// Inverse transform including the 1/N^2 factor.
  void backward(const cplx* in, cplx* out) const;

 private:
  int size_;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

}  // namespace rotgp
