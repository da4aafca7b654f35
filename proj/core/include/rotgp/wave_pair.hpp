#pragma once

#include <array>

#include "rotgp/field.hpp"

namespace rotgp {

enum class Frame { psi, phi };

/// Two complex order parameters at one instant.
///
/// The represented wave is component[k](x) * exp(i carrier.x / epsilon).
/// A nonzero carrier lets psi-frame data with a plane-wave far field be
/// stored as a decaying periodic field; raw samples use carrier = 0.
struct WavePair {
  Frame frame = Frame::psi;
  double time = 0.0;
  Vec2 carrier{};
  std::array<ComplexField, 2> component;

  const GridPtr& grid() const noexcept { return component[0].grid(); }
};

}  // namespace rotgp
