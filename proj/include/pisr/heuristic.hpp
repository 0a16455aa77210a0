#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "pisr/instance.hpp"
#include "pisr/plan.hpp"

namespace pisr {

// Cost of a partial assignment: the largest delivery time over each
// vehicle's first task, with the cycle closed at the depot. For a sequence
// s1..sk this is c[s1][s2] + ... + c[sk][d]; an empty assignment costs 0.
double node_cost(const Instance& instance, const std::vector<std::vector<int>>& assignments);

// True when every vehicle's cycle length stays within the smallest revisit
// limit among its assigned tasks.
bool node_feasibility(const Instance& instance, const std::vector<std::vector<int>>& assignments);

struct ScaleFactors {
  double s_c1 = 1.0;  // R_i / R_max for the task assigned at this node
  double s_c2 = 1.0;  // 10^(-n_t), n_t = constrained tasks on this node's vehicle
};

// last_task: task assigned at this node. vehicle_constrained_count: number of
// explicitly revisit-constrained tasks on that vehicle, this one included.
ScaleFactors scale_factors(const Instance& instance, int last_task, int vehicle_constrained_count);

enum class TreeSearchStatus { Exhausted, NodeLimit, NoFeasibleFound };

struct TreeSearchResult {
  TreeSearchStatus status = TreeSearchStatus::NoFeasibleFound;
  std::optional<RoutePlan> bfs_plan;    // first feasible leaf (best-first descent)
  double bfs_cost = kInfinity;          // its z per evaluate_plan
  long bfs_nodes = 0;
  double bfs_seconds = 0.0;
  std::optional<RoutePlan> final_plan;  // best leaf within the budget
  double final_cost = kInfinity;
  long nodes_explored = 0;
  double total_seconds = 0.0;
};

struct TreeSearchConfig {
  long node_limit = 1000000;
  std::ostream* trace = nullptr;  // one line per expanded node
};

// Greedy assignment tree search: children assign one unassigned task to one
// vehicle (only the lowest-indexed empty vehicle is offered) and are ordered
// by S_c1 * S_c2 * C; descent takes the smallest, backtracking is LIFO over
// the remaining siblings, pruning nodes that are infeasible or whose raw
// cost C cannot beat the incumbent.
TreeSearchResult tree_search(const Instance& instance, const TreeSearchConfig& config = {});

}  // namespace pisr
