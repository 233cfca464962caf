#pragma once

// 2-approximation for uniform fixed costs: an optimal linear-cost flow with
// forest support pays at most n + m - 1 in fixed costs.

#include "fct/model.hpp"
#include "fct/transport.hpp"

namespace fct {

inline FlowSolution solve_fct_u(const Instance& inst) {
  require_valid(inst);
  if (!classify_variant(inst).uniform) throw UsageError("requires FCT-U");
  auto result = solve_transportation(inst, inst.linear);
  return cancel_cycles(std::move(result.flow), inst.linear);
}

}  // namespace fct
