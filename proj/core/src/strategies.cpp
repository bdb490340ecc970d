#include "gridgame/strategies.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "gridgame/errors.hpp"

namespace gridgame {

namespace {

constexpr long long kSaturated = std::numeric_limits<long long>::max();

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (long long i = 1; i <= k; ++i) {
    // multiply before divide stays exact: result * (n - k + i) / i is the
    // binomial C(n - k + i, i)
    if (result > kSaturated / (n - k + i)) return kSaturated;
    result = result * (n - k + i) / i;
  }
  return result;
}

void check_cap(long long count, long long cap, const std::string& what) {
  if (count > cap)
    fail(Errc::CapExceeded, what + " would enumerate " + std::to_string(count) +
                                " strategies (cap " + std::to_string(cap) +
                                "); raise the cap or coarsen the granularity / shrink the pool");
}

}  // namespace

long long count_attacks(int pool_size, int max_size) {
  long long total = 0;
  for (int k = 1; k <= max_size; ++k) {
    const long long c = binomial(pool_size, k);
    if (c >= kSaturated - total) return kSaturated;
    total += c;
  }
  return total;
}

std::vector<std::vector<int>> enumerate_attacks(const std::vector<int>& pool, int max_size,
                                                long long cap) {
  std::vector<int> sorted = pool;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const int n = static_cast<int>(sorted.size());
  if (max_size < 1 || max_size > n)
    fail(Errc::KExceedsPool, "attack size bound " + std::to_string(max_size) +
                                 " outside pool of " + std::to_string(n) + " states");
  check_cap(count_attacks(n, max_size), cap, "attack set");

  std::vector<std::vector<int>> out;
  out.reserve(static_cast<size_t>(count_attacks(n, max_size)));
  std::vector<int> pick;
  for (int size = 1; size <= max_size; ++size) {
    pick.assign(size, 0);
    // odometer over combination indices in lexicographic order
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<int> subset(size);
      for (int i = 0; i < size; ++i) subset[i] = sorted[pick[i]];
      out.push_back(std::move(subset));
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

long long count_allocations(int subsystems, long long budget, int granularity) {
  if (subsystems < 1) fail(Errc::InvalidScenario, "need at least one subsystem");
  if (granularity < 1) fail(Errc::InvalidScenario, "granularity must be positive");
  const long long units = budget / granularity;
  if (units < subsystems)
    fail(Errc::InfeasibleBudget,
         "budget " + std::to_string(budget) + " cannot grant every one of " +
             std::to_string(subsystems) + " subsystems " + std::to_string(granularity));
  return binomial(units - 1, subsystems - 1);
}

std::vector<std::vector<int>> compositions(int total, int parts, long long cap) {
  check_cap(binomial(total - 1, parts - 1), cap, "allocation set");
  std::vector<std::vector<int>> out;
  std::vector<int> current(parts, 0);
  // recursive descent, first slot slowest: lexicographic ascending
  auto emit = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == parts - 1) {
      current[slot] = remaining;
      out.push_back(current);
      return;
    }
    const int tail = parts - slot - 1;  // later slots need >= 1 each
    for (int take = 1; take <= remaining - tail; ++take) {
      current[slot] = take;
      self(self, slot + 1, remaining - take);
    }
  };
  if (parts >= 1 && total >= parts) emit(emit, 0, total);
  return out;
}

std::vector<std::vector<int>> enumerate_allocations(int subsystems, long long budget,
                                                    int granularity, long long cap) {
  const long long count = count_allocations(subsystems, budget, granularity);
  check_cap(count, cap, "allocation set");
  const int units = static_cast<int>(budget / granularity);
  std::vector<std::vector<int>> out = compositions(units, subsystems, cap);
  for (auto& alloc : out)
    for (auto& part : alloc) part *= granularity;
  return out;
}

}  // namespace gridgame
