#include "rotgp/model.hpp"

namespace rotgp {

Model make_model(const SimParams& params, RotatingFieldSpec rotating, TrapPotentialSpec trap, const GridPtr& grid,
                 bool penalize) {
  params.validate();
  rotating.a_inf = params.a_inf;
  trap.v_inf = params.v_inf;
  trap.validate(grid->length());
  return Model{params, std::make_shared<const RotatingField>(rotating, grid), trap, penalize};
}

}  // namespace rotgp
