#pragma once

// Exact rational linear programming, phase 1 only: decide feasibility of
// A x >= b with x free. Bland's rule, no floating point anywhere.

#include "accy/numeric.hpp"

namespace accy {

struct LPResult {
  bool feasible = false;
  std::vector<Rat> witness;  // a feasible point when feasible
};

LPResult lp_feasible(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b);

}  // namespace accy
