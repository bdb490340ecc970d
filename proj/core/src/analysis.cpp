#include "gridgame/analysis.hpp"

#include <algorithm>
#include <string>

#include "gridgame/errors.hpp"
#include "gridgame/strategies.hpp"

namespace gridgame {

BaselineReport equal_allocation_baseline(const PayoffMatrix& payoff, const Vec& attacker_mixture) {
  if (payoff.allocations.empty())
    fail(Errc::NoEqualAllocation, "defender strategy list is empty");
  if (attacker_mixture.size() != payoff.values.rows())
    fail(Errc::InvalidScenario, "attacker mixture does not match the payoff rows");

  BaselineReport report;
  int best_spread = -1;
  for (size_t c = 0; c < payoff.allocations.size(); ++c) {
    const auto& alloc = payoff.allocations[c];
    const auto [lo, hi] = std::minmax_element(alloc.begin(), alloc.end());
    const int spread = *hi - *lo;
    const bool better =
        report.column < 0 || spread < best_spread ||
        (spread == best_spread &&
         std::lexicographical_compare(alloc.begin(), alloc.end(),
                                      payoff.allocations[report.column].begin(),
                                      payoff.allocations[report.column].end()));
    if (better) {
      best_spread = spread;
      report.column = static_cast<int>(c);
    }
  }
  report.allocation = payoff.allocations[report.column];
  report.exact = best_spread == 0;

  const Vec column = payoff.values.col(report.column);
  report.mixture_loss = attacker_mixture.dot(column);
  report.best_response_row = 0;
  for (int r = 1; r < column.size(); ++r)
    if (column[r] > column[report.best_response_row]) report.best_response_row = r;
  report.best_response_loss = column[report.best_response_row];
  return report;
}

std::vector<std::vector<int>> electric_allocations(const DescriptorSystem& sys, long long budget,
                                                   int granularity, long long cap) {
  if (granularity < 1) fail(Errc::InvalidScenario, "granularity must be positive");
  const int blocks = sys.subsystem_count();
  std::vector<int> electric;
  for (int b = 0; b < blocks; ++b)
    if (sys.subsystem_electric(b)) electric.push_back(b);
  if (electric.empty())
    fail(Errc::InvalidScenario, "no all-electric subsystem to concentrate the budget on");

  const long long units = budget / granularity;
  const auto pinned = static_cast<long long>(blocks - static_cast<int>(electric.size()));
  const long long free_units = units - pinned;
  if (free_units < static_cast<long long>(electric.size()))
    fail(Errc::InfeasibleBudget,
         "budget " + std::to_string(budget) + " cannot pin non-electric subsystems at " +
             std::to_string(granularity) + " and still cover the electric ones");

  const auto comps = compositions(static_cast<int>(free_units),
                                  static_cast<int>(electric.size()), cap);
  std::vector<std::vector<int>> out;
  out.reserve(comps.size());
  for (const auto& comp : comps) {
    std::vector<int> alloc(blocks, granularity);
    for (size_t k = 0; k < electric.size(); ++k) alloc[electric[k]] = comp[k] * granularity;
    out.push_back(std::move(alloc));
  }
  return out;
}

}  // namespace gridgame
