#pragma once

#include <optional>

#include "pisr/instance.hpp"
#include "pisr/plan.hpp"

namespace pisr {

enum class OracleStatus { Optimal, Infeasible };

struct OracleResult {
  OracleStatus status = OracleStatus::Infeasible;
  std::optional<RoutePlan> plan;
  double objective = kInfinity;
  long nodes = 0;  // enumeration counter
};

struct OracleConfig {
  int cap_n = 9;
  bool pruning = true;  // disabled only by soundness tests
};

// Ground-truth solver: enumerates every assignment of tasks to at most n_v
// ordered cycles by inserting tasks in id order into every position of every
// open cycle (a new cycle is always opened by the lowest unassigned task, so
// identical vehicles are never enumerated twice). Prunes branches whose
// partial cycle length exceeds the smallest revisit limit on that cycle or
// whose partial max delivery already rules out beating the incumbent.
// Ties between optimal plans resolve to the lexicographically smallest
// cycle list. Throws TooLargeError when n > cap_n.
OracleResult brute_force_solve(const Instance& instance, const OracleConfig& config = {});

}  // namespace pisr
