#include "pisr/plan.hpp"

#include <algorithm>
#include <string>

#include "pisr/errors.hpp"

namespace pisr {

RoutePlan canonical_plan(RoutePlan plan) {
  std::sort(plan.cycles.begin(), plan.cycles.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  return plan;
}

PlanMetrics evaluate_plan(const Instance& instance, const RoutePlan& plan) {
  const int n = instance.n_tasks();
  if (static_cast<int>(plan.cycles.size()) > instance.n_v)
    throw PlanError(PlanError::Kind::TooManyCycles,
                    "plan uses " + std::to_string(plan.cycles.size()) + " cycles but n_v = " +
                        std::to_string(instance.n_v));

  std::vector<char> seen(n + 1, 0);
  for (const auto& cycle : plan.cycles) {
    if (cycle.empty())
      throw PlanError(PlanError::Kind::EmptyCycle, "plan stores an empty cycle");
    for (int id : cycle) {
      if (id < 1 || id > n)
        throw PlanError(PlanError::Kind::UnknownTask, "unknown task " + std::to_string(id));
      if (seen[id])
        throw PlanError(PlanError::Kind::DuplicateTask,
                        "task " + std::to_string(id) + " appears more than once");
      seen[id] = 1;
    }
  }
  for (int id = 1; id <= n; ++id)
    if (!seen[id])
      throw PlanError(PlanError::Kind::MissingTask, "task " + std::to_string(id) + " not covered");

  const TravelMatrix& c = instance.travel;
  PlanMetrics m;
  for (const auto& cycle : plan.cycles) {
    // Prefix times from the depot, service of the head node included.
    double elapsed = 0.0;
    int prev = kDepot;
    for (int id : cycle) {
      elapsed += c.at(prev, id);
      m.u[id] = elapsed;
      prev = id;
    }
    const double length = elapsed + c.at(prev, kDepot);
    m.cycle_lengths.push_back(length);

    double min_limit = kInfinity;
    for (int id : cycle) {
      const double v = length - m.u[id];
      m.v[id] = v;
      m.delivery[id] = v;
      m.z = std::max(m.z, v);
      min_limit = std::min(min_limit, instance.revisit_limit_or_inf(id));
    }
    if (length > min_limit + kFeasibilityTol) {
      for (int id : cycle) {
        const double limit = instance.revisit_limit_or_inf(id);
        if (length > limit + kFeasibilityTol)
          m.violations.push_back({id, length, limit});
      }
    }
  }
  m.feasible = m.violations.empty();
  return m;
}

}  // namespace pisr
