#pragma once

#include <cstdint>
#include <vector>

namespace gridgame {

/// Number of nonempty subsets of the pool with size at most max_size
/// (sum of binomials). Saturates at int64 max on overflow.
[[nodiscard]] long long count_attacks(int pool_size, int max_size);

/// All attack sets drawn from `pool` with 1 <= size <= max_size, ordered by
/// size then lexicographically over the sorted pool. KExceedsPool when the
/// pool cannot fill max_size; CapExceeded when the count passes `cap` (the
/// check runs before anything is materialized).
std::vector<std::vector<int>> enumerate_attacks(const std::vector<int>& pool, int max_size,
                                                long long cap);

/// Number of allocations of `budget` over `subsystems` slots in positive
/// multiples of `granularity` summing to granularity * floor(budget /
/// granularity): the compositions count C(q - 1, slots - 1).
/// InfeasibleBudget when even the minimum per-slot grant does not fit.
[[nodiscard]] long long count_allocations(int subsystems, long long budget, int granularity);

/// The allocations themselves, lexicographically ordered. Budgets that are
/// not multiples of the granularity are floored to the largest reachable
/// total (every allocation still spends it exactly). CapExceeded before
/// materialization when the count passes `cap`.
std::vector<std::vector<int>> enumerate_allocations(int subsystems, long long budget,
                                                    int granularity, long long cap);

/// Compositions of `total` into `parts` positive integers, lexicographic.
/// Building block for the allocation enumerators (units of one granularity).
std::vector<std::vector<int>> compositions(int total, int parts, long long cap);

}  // namespace gridgame
