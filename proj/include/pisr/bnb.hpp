#pragma once

#include <functional>
#include <optional>
#include <ostream>

#include "pisr/lp.hpp"
#include "pisr/milp.hpp"
#include "pisr/plan.hpp"

namespace pisr {

enum class BnbStatus { Optimal, FeasibleTimeout, Infeasible, NodeLimit };

struct BnbResult {
  BnbStatus status = BnbStatus::Infeasible;
  std::optional<double> incumbent_objective;
  double best_bound = -kInfinity;
  double gap = kInfinity;  // (incumbent - bound) / max(|incumbent|, 1)
  long nodes_explored = 0;
  double wall_time = 0.0;  // seconds
  std::optional<RoutePlan> incumbent_plan;
};

struct BnbConfig {
  double time_limit = 0.0;  // seconds; 0 = unlimited
  long node_limit = 0;      // LP-solved nodes; 0 = unlimited
  double gap_tol = 1e-6;
  bool depth_first = false;            // low-memory LIFO mode
  std::ostream* progress = nullptr;    // one line per incumbent improvement
  std::function<void(long, double)> on_node;  // (nodes_explored, best_bound), test hook
  LpOptions lp;
};

// LP-based branch and bound: best-bound node selection, branching on the
// most fractional binary (ties to the lowest variable index), children fix
// the variable to 0 / 1. An integral relaxation becomes the incumbent only
// after its decoded plan re-evaluates feasible.
// Node exploration order is a pure function of (model, node_limit, gap_tol);
// a time limit only changes where the run stops.
BnbResult solve_milp(const MilpModel& model, const Instance& instance,
                     const BnbConfig& config = {});

}  // namespace pisr
