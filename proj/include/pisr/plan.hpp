#pragma once

#include <map>
#include <vector>

#include "pisr/instance.hpp"

namespace pisr {

// Up to n_v ordered task sequences; each cycle implicitly starts and ends at
// the depot. Unused vehicles are not stored.
struct RoutePlan {
  std::vector<std::vector<int>> cycles;
};

// Orders cycles by their first task id. Metrics are invariant under cycle
// order, so this is presentation-only.
RoutePlan canonical_plan(RoutePlan plan);

struct RevisitViolation {
  int task = 0;
  double cycle_length = 0.0;
  double limit = 0.0;
};

struct PlanMetrics {
  std::map<int, double> u;         // depot -> task elapsed time, service included
  std::map<int, double> v;         // task -> depot return time
  std::map<int, double> delivery;  // D_i = v_i
  std::vector<double> cycle_lengths;
  double z = 0.0;  // max over tasks of delivery
  bool feasible = true;
  std::vector<RevisitViolation> violations;
};

// Absolute tolerance for revisit-limit feasibility checks.
inline constexpr double kFeasibilityTol = 1e-6;

// Walks each cycle accumulating prefix (u) and suffix (v) times.
// Throws PlanError when the plan is not a partition of the tasks or uses
// more than n_v cycles.
PlanMetrics evaluate_plan(const Instance& instance, const RoutePlan& plan);

}  // namespace pisr
