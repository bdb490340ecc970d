#pragma once

#include <vector>

#include "gridgame/descriptor_system.hpp"
#include "gridgame/payoff.hpp"
#include "gridgame/solvers.hpp"
#include "gridgame/types.hpp"

namespace gridgame {

/// Cost of defending with a fixed, evenly spread allocation instead of the
/// equilibrium mixture. `exact` is false when the budget does not divide
/// evenly (the most balanced composition in the list is used and flagged).
struct BaselineReport {
  std::vector<int> allocation;
  int column = -1;
  bool exact = false;
  double mixture_loss = 0.0;       // equilibrium attacker mixture vs the pin
  double best_response_loss = 0.0; // attacker best response vs the pin
  int best_response_row = -1;
};

/// Picks the most balanced allocation (smallest max-min spread, ties to the
/// lexicographically smallest) from the payoff's column strategies.
/// NoEqualAllocation when the column list is empty.
BaselineReport equal_allocation_baseline(const PayoffMatrix& payoff, const Vec& attacker_mixture);

/// Allocations for a defender forced to concentrate on electric subsystems:
/// every non-electric block is pinned at the minimum grant, the electric
/// blocks share the remaining budget. InfeasibleBudget when that leaves the
/// electric blocks short; InvalidScenario when no block is electric.
std::vector<std::vector<int>> electric_allocations(const DescriptorSystem& sys, long long budget,
                                                   int granularity, long long cap);

}  // namespace gridgame
