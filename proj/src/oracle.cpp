#include "pisr/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "pisr/errors.hpp"

namespace pisr {

namespace {

struct CycleState {
  std::vector<int> seq;
  double length = 0.0;     // full cycle length through the depot
  double min_limit = kInfinity;
};

struct Search {
  const Instance& inst;
  const TravelMatrix& c;
  bool pruning;
  int n;
  long nodes = 0;

  std::vector<CycleState> cycles;
  double best_z = kInfinity;
  std::optional<RoutePlan> best_plan;

  explicit Search(const Instance& instance, bool enable_pruning)
      : inst(instance), c(instance.travel), pruning(enable_pruning), n(instance.n_tasks()) {}

  // Delivery time of a cycle's first task: cycle length minus the depot leg.
  double first_delivery(const CycleState& cs) const {
    return cs.length - c.at(kDepot, cs.seq.front());
  }

  double partial_max_delivery() const {
    double z = 0.0;
    for (const CycleState& cs : cycles)
      if (!cs.seq.empty()) z = std::max(z, first_delivery(cs));
    return z;
  }

  bool lex_less(const RoutePlan& a, const RoutePlan& b) const {
    return a.cycles < b.cycles;
  }

  void record_leaf() {
    const double z = partial_max_delivery();
    RoutePlan plan;
    for (const CycleState& cs : cycles) plan.cycles.push_back(cs.seq);
    plan = canonical_plan(std::move(plan));
    if (z < best_z || (z == best_z && best_plan && lex_less(plan, *best_plan))) {
      best_z = z;
      best_plan = std::move(plan);
    }
  }

  bool prune_here() const {
    if (!pruning) return false;
    for (const CycleState& cs : cycles)
      if (cs.length > cs.min_limit + kFeasibilityTol) return true;
    // strict comparison so equal-cost plans stay reachable for the tie-break
    return best_plan && partial_max_delivery() > best_z;
  }

  void place(int task) {
    ++nodes;
    if (prune_here()) return;
    if (task > n) {
      // feasibility of complete plans is implied when pruning is on
      bool feasible = true;
      for (const CycleState& cs : cycles)
        if (cs.length > cs.min_limit + kFeasibilityTol) feasible = false;
      if (feasible) record_leaf();
      return;
    }

    const double limit = inst.revisit_limit_or_inf(task);
    // insert into every position of every open cycle; index access because
    // deeper recursion levels may grow the cycles vector
    for (std::size_t k = 0; k < cycles.size(); ++k) {
      const std::size_t len = cycles[k].seq.size();
      for (std::size_t pos = 0; pos <= len; ++pos) {
        CycleState& cs = cycles[k];
        const int before = (pos == 0) ? kDepot : cs.seq[pos - 1];
        const int after = (pos == len) ? kDepot : cs.seq[pos];
        const double delta = c.at(before, task) + c.at(task, after) - c.at(before, after);
        const double saved_limit = cs.min_limit;
        cs.seq.insert(cs.seq.begin() + pos, task);
        cs.length += delta;
        cs.min_limit = std::min(cs.min_limit, limit);
        place(task + 1);
        CycleState& cs_back = cycles[k];
        cs_back.min_limit = saved_limit;
        cs_back.length -= delta;
        cs_back.seq.erase(cs_back.seq.begin() + pos);
      }
    }
    // or open the next vehicle
    if (static_cast<int>(cycles.size()) < inst.n_v) {
      CycleState cs;
      cs.seq = {task};
      cs.length = c.at(kDepot, task) + c.at(task, kDepot);
      cs.min_limit = limit;
      cycles.push_back(std::move(cs));
      place(task + 1);
      cycles.pop_back();
    }
  }
};

}  // namespace

OracleResult brute_force_solve(const Instance& instance, const OracleConfig& config) {
  if (instance.n_tasks() > config.cap_n)
    throw TooLargeError("brute_force_solve: " + std::to_string(instance.n_tasks()) +
                        " tasks exceeds cap " + std::to_string(config.cap_n));

  Search search(instance, config.pruning);
  search.cycles.reserve(instance.n_v);
  search.place(1);

  OracleResult result;
  result.nodes = search.nodes;
  if (search.best_plan) {
    result.status = OracleStatus::Optimal;
    result.plan = std::move(search.best_plan);
    result.objective = search.best_z;
  }
  return result;
}

}  // namespace pisr
