#pragma once

#include <memory>

#include "rotgp/external_fields.hpp"
#include "rotgp/params.hpp"

namespace rotgp {

/// Everything that defines the equations: parameters and external fields on
/// one grid.
struct Model {
  SimParams params;
  std::shared_ptr<const RotatingField> field;
  TrapPotentialSpec trap;
  /// Include the obstacle penalization potential.
  bool penalize = false;

  const GridPtr& grid() const { return field->grid(); }
};

/// Validates the parts and builds the field model. The far-field constants
/// of the trap and the rotating field are taken from params.
Model make_model(const SimParams& params, RotatingFieldSpec rotating, TrapPotentialSpec trap, const GridPtr& grid,
                 bool penalize = false);

}  // namespace rotgp
