#pragma once

#include <cstdint>

#include "hbm/core.hpp"

// Exact brute-force solver for small instances. Used as the ground truth
// in tests; not meant for anything beyond a handful of edges.

namespace hbm {

struct OracleResult {
    HMatching best_x;
    Count best_size = 0;
    std::uint64_t nodes_explored = 0;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Exhaustive depth-first search over multiplicity vectors, edges in lex
/// order, 0..c_e per edge. Prunes prefixes that violate a bound and
/// branches whose optimistic completion (current size plus the remaining
/// capacity sum) cannot beat the incumbent. Throws BudgetExceededError
/// when the node budget runs out.
OracleResult brute_force_max(const Instance& instance,
                             std::uint64_t budget = kDefaultOracleBudget);

}  // namespace hbm
