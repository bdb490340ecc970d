#include "gridgame/payoff.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "gridgame/detection.hpp"
#include "gridgame/dynamics.hpp"
#include "gridgame/errors.hpp"
#include "gridgame/hashing.hpp"

namespace gridgame {

namespace {

uint64_t hash_config(const DescriptorSystem& sys, const PayoffInputs& inputs) {
  uint64_t h = kFnvOffset;
  for (int r = 0; r < sys.n(); ++r) {
    h = fnv1a(sys.e(r, r), h);
    for (int c = 0; c < sys.n(); ++c) h = fnv1a(sys.a(r, c), h);
    h = fnv1a(sys.cost[r], h);
  }
  h = fnv1a(static_cast<double>(inputs.waveform.kind), h);
  h = fnv1a(inputs.waveform.magnitude, h);
  h = fnv1a(inputs.waveform.stop - inputs.waveform.start, h);
  h = fnv1a(inputs.waveform.frequency_hz, h);
  h = fnv1a(inputs.window, h);
  h = fnv1a(inputs.step, h);
  return h;
}

}  // namespace

PayoffMatrix build_payoff(const DescriptorSystem& sys,
                          const std::vector<std::vector<int>>& attacks,
                          const std::vector<std::vector<int>>& allocations,
                          const PayoffInputs& inputs) {
  if (attacks.empty() || allocations.empty())
    fail(Errc::InvalidScenario, "need at least one strategy per player");
  if (!(inputs.window > 0.0)) fail(Errc::HorizonNonpositive, "observation window");

  const int blocks = sys.subsystem_count();
  std::set<int> pool;
  for (const auto& attack : attacks)
    for (int s : attack) {
      if (s < 0 || s >= sys.n())
        fail(Errc::InvalidScenario, "attack references state " + std::to_string(s));
      pool.insert(s);
    }
  std::set<int> link_counts;
  for (const auto& alloc : allocations) {
    if (static_cast<int>(alloc.size()) != blocks)
      fail(Errc::PartitionMismatch, "allocation arity differs from the subsystem count");
    for (int m : alloc) link_counts.insert(m);  // detection_time rejects m < 1
  }

  // longest window any allocation can produce, one profile per pool state
  double max_window = 0.0;
  for (int m : link_counts) max_window = std::max(max_window, detection_time(inputs.window, m));

  const Waveform waveform = inputs.waveform.restarted_at_zero();
  std::map<int, std::map<int, double>> cost_at;  // state -> links -> cost integral
  for (int s : pool) {
    const CostProfile profile = cost_profile(sys, s, waveform, max_window, inputs.step);
    auto& row = cost_at[s];
    for (int m : link_counts) row[m] = profile.evaluate(detection_time(inputs.window, m));
  }

  PayoffMatrix out;
  out.attacks = attacks;
  out.allocations = allocations;
  out.window = inputs.window;
  out.config_hash = hash_config(sys, inputs);
  out.values.resize(static_cast<Eigen::Index>(attacks.size()),
                    static_cast<Eigen::Index>(allocations.size()));
  for (size_t r = 0; r < attacks.size(); ++r) {
    for (size_t c = 0; c < allocations.size(); ++c) {
      double value = 0.0;
      for (int s : attacks[r]) value += cost_at[s][allocations[c][sys.states[s].subsystem]];
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
    }
  }
  return out;
}

}  // namespace gridgame
