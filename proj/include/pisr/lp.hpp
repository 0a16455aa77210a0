#pragma once

#include <vector>

#include "pisr/milp.hpp"

namespace pisr {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> values;  // one entry per model variable
  int iterations = 0;
};

struct LpOptions {
  double feas_tol = 1e-7;
  double pivot_tol = 1e-9;
  int max_iterations = 50000;
  int stall_threshold = 1000;  // degenerate iterations before Bland's rule kicks in
};

// Two-phase primal simplex on a dense tableau with bounded variables.
// Integrality is relaxed; every variable must carry finite bounds.
// Deterministic: identical input yields identical pivots and solution.
LpSolution solve_lp(const MilpModel& model, const LpOptions& options = {});

// Same, with per-variable bound overrides (used by branch-and-bound node
// fixings). lower/upper must have one entry per model variable.
LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper, const LpOptions& options = {});

}  // namespace pisr
