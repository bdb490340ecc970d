#pragma once

#include <cstdint>
#include <vector>

#include "gridgame/descriptor_system.hpp"
#include "gridgame/types.hpp"
#include "gridgame/waveform.hpp"

namespace gridgame {

struct PayoffInputs {
  Waveform waveform;   // injected from t = 0 on every attacked state
  double window = 5.0; // observation window T
  double step = 1e-3;  // integration step
};

/// Attacker payoff matrix: values(r, c) is the power cost deviation when
/// attack r runs against allocation c, each attacked state integrated over
/// the detection window T / m of its own subsystem. The defender's payoff is
/// the negation (zero-sum).
struct PayoffMatrix {
  Mat values;  // attacks x allocations
  std::vector<std::vector<int>> attacks;      // state index sets
  std::vector<std::vector<int>> allocations;  // links per subsystem
  double window = 0.0;
  uint64_t config_hash = 0;  // dynamics provenance: system + waveform + grid
};

/// Builds the matrix from one cost profile per attacked-pool state: entry
/// (r, c) is a sum of window lookups, so the simulation count is the pool
/// size, not attacks x allocations.
PayoffMatrix build_payoff(const DescriptorSystem& sys,
                          const std::vector<std::vector<int>>& attacks,
                          const std::vector<std::vector<int>>& allocations,
                          const PayoffInputs& inputs);

}  // namespace gridgame
