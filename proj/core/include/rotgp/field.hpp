#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rotgp/grid.hpp"

namespace rotgp {

/// Values of type T at every node of a grid.
template <class T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  explicit Field(GridPtr grid, T fill = T{})
      : grid_(std::move(grid)), values_(grid_->count(), fill) {}
  Field(GridPtr grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->count()) throw std::invalid_argument("field size does not match grid");
  }

  const GridPtr& grid() const noexcept { return grid_; }
  const Grid2D& layout() const noexcept { return *grid_; }
  bool empty() const noexcept { return values_.empty(); }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }
  T* data() noexcept { return values_.data(); }
  const T* data() const noexcept { return values_.data(); }

  T& operator[](std::size_t i) noexcept { return values_[i]; }
  const T& operator[](std::size_t i) const noexcept { return values_[i]; }
  T& at(int i1, int i2) { return values_[grid_->index(i1, i2)]; }
  const T& at(int i1, int i2) const { return values_[grid_->index(i1, i2)]; }

  Field& operator+=(const Field& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  template <class S>
  Field& operator*=(S s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }

  friend bool operator==(const Field& a, const Field& b) { return a.values_ == b.values_; }

 private:
  GridPtr grid_;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using ComplexField = Field<cplx>;

/// Two real components on a shared layout.
struct VectorField {
  ScalarField x;
  ScalarField y;

  VectorField() = default;
  explicit VectorField(const GridPtr& grid, Vec2 fill = {}) : x(grid, fill.x), y(grid, fill.y) {}
  VectorField(ScalarField x_, ScalarField y_) : x(std::move(x_)), y(std::move(y_)) {}

  const GridPtr& grid() const noexcept { return x.grid(); }
  std::size_t size() const noexcept { return x.size(); }
  Vec2 operator[](std::size_t i) const noexcept { return {x[i], y[i]}; }
  void set(std::size_t i, Vec2 v) noexcept { x[i] = v.x; y[i] = v.y; }
};

/// Two complex components, e.g. a complex gradient.
struct ComplexVector {
  ComplexField x;
  ComplexField y;
};

/// Sample fn(Vec2) -> T at every node.
template <class Fn>
auto sample(const GridPtr& grid, Fn&& fn) {
  using T = std::decay_t<decltype(fn(Vec2{}))>;
  Field<T> out(grid);
  for (std::size_t i = 0; i < grid->count(); ++i) out[i] = fn(grid->node(i));
  return out;
}

/// Sample a vector-valued fn(Vec2) -> Vec2.
template <class Fn>
VectorField sample_vector(const GridPtr& grid, Fn&& fn) {
  VectorField out(grid);
  for (std::size_t i = 0; i < grid->count(); ++i) out.set(i, fn(grid->node(i)));
  return out;
}

}  // namespace rotgp
