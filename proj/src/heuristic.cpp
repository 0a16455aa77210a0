#include "pisr/heuristic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

namespace pisr {

double node_cost(const Instance& instance, const std::vector<std::vector<int>>& assignments) {
  const TravelMatrix& c = instance.travel;
  double worst = 0.0;
  for (const auto& seq : assignments) {
    if (seq.empty()) continue;
    double delivery = 0.0;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) delivery += c.at(seq[k], seq[k + 1]);
    delivery += c.at(seq.back(), kDepot);
    worst = std::max(worst, delivery);
  }
  return worst;
}

bool node_feasibility(const Instance& instance,
                      const std::vector<std::vector<int>>& assignments) {
  const TravelMatrix& c = instance.travel;
  for (const auto& seq : assignments) {
    if (seq.empty()) continue;
    double length = c.at(kDepot, seq.front());
    double min_limit = kInfinity;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (k + 1 < seq.size()) length += c.at(seq[k], seq[k + 1]);
      min_limit = std::min(min_limit, instance.revisit_limit_or_inf(seq[k]));
    }
    length += c.at(seq.back(), kDepot);
    if (length > min_limit + kFeasibilityTol) return false;
  }
  return true;
}

ScaleFactors scale_factors(const Instance& instance, int last_task,
                           int vehicle_constrained_count) {
  ScaleFactors s;
  double r_max = 0.0;
  for (const auto& [id, r] : instance.revisit_limits) r_max = std::max(r_max, r);
  if (r_max > 0.0 && instance.is_constrained(last_task))
    s.s_c1 = instance.revisit_limits.at(last_task) / r_max;
  s.s_c2 = std::pow(10.0, -vehicle_constrained_count);
  return s;
}

namespace {

// A candidate child: task `task` appended to vehicle `vehicle`.
struct Child {
  double scaled = 0.0;
  double raw = 0.0;  // C(n), +inf when the assignment breaks a revisit limit
  int task = 0;
  int vehicle = 0;
};

struct VehicleState {
  std::vector<int> seq;
  double length_open = 0.0;   // depot -> ... -> last task (no closing leg)
  double first_delivery = 0.0;  // delivery time of the first task, cycle closed
  double min_limit = kInfinity;
  int constrained_count = 0;
};

struct Searcher {
  const Instance& inst;
  const TravelMatrix& c;
  const TreeSearchConfig& config;
  TreeSearchResult result;
  std::chrono::steady_clock::time_point start;

  std::vector<VehicleState> vehicles;
  std::vector<char> assigned;
  int remaining;

  Searcher(const Instance& instance, const TreeSearchConfig& cfg)
      : inst(instance), c(instance.travel), config(cfg),
        start(std::chrono::steady_clock::now()),
        vehicles(instance.n_v), assigned(instance.n_tasks() + 1, 0),
        remaining(instance.n_tasks()) {}

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  // Cost of the tree node reached by appending `task` to `vehicle`:
  // max over vehicles of the first task's delivery time.
  Child evaluate_child(int task, int vehicle) const {
    Child child;
    child.task = task;
    child.vehicle = vehicle;

    const VehicleState& vs = vehicles[vehicle];
    double new_first_delivery, new_length, new_min_limit;
    if (vs.seq.empty()) {
      new_first_delivery = c.at(task, kDepot);
      new_length = c.at(kDepot, task) + c.at(task, kDepot);
      new_min_limit = inst.revisit_limit_or_inf(task);
    } else {
      const int last = vs.seq.back();
      new_first_delivery = vs.first_delivery - c.at(last, kDepot) + c.at(last, task) +
                           c.at(task, kDepot);
      new_length = vs.length_open + c.at(last, task) + c.at(task, kDepot);
      new_min_limit = std::min(vs.min_limit, inst.revisit_limit_or_inf(task));
    }
    if (new_length > new_min_limit + kFeasibilityTol) {
      child.raw = kInfinity;  // revisit limit broken: infinite cost
      child.scaled = kInfinity;
      return child;
    }
    double raw = new_first_delivery;
    for (int v = 0; v < inst.n_v; ++v)
      if (v != vehicle && !vehicles[v].seq.empty())
        raw = std::max(raw, vehicles[v].first_delivery);
    child.raw = raw;

    const int n_t = vehicles[vehicle].constrained_count + (inst.is_constrained(task) ? 1 : 0);
    const ScaleFactors s = scale_factors(inst, task, n_t);
    child.scaled = s.s_c1 * s.s_c2 * raw;
    return child;
  }

  std::vector<Child> make_children() const {
    std::vector<Child> children;
    int first_empty = -1;
    for (int v = 0; v < inst.n_v; ++v)
      if (vehicles[v].seq.empty()) {
        first_empty = v;
        break;
      }
    for (int task = 1; task <= inst.n_tasks(); ++task) {
      if (assigned[task]) continue;
      for (int v = 0; v < inst.n_v; ++v) {
        if (vehicles[v].seq.empty() && v != first_empty) continue;  // identical vehicles
        children.push_back(evaluate_child(task, v));
      }
    }
    std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      if (a.scaled != b.scaled) return a.scaled < b.scaled;
      if (a.task != b.task) return a.task < b.task;
      return a.vehicle < b.vehicle;
    });
    return children;
  }

  void apply(const Child& child) {
    VehicleState& vs = vehicles[child.vehicle];
    if (vs.seq.empty()) {
      vs.length_open = c.at(kDepot, child.task);
      vs.first_delivery = c.at(child.task, kDepot);
    } else {
      const int last = vs.seq.back();
      vs.length_open += c.at(last, child.task);
      vs.first_delivery += c.at(last, child.task) + c.at(child.task, kDepot) -
                           c.at(last, kDepot);
    }
    vs.min_limit = std::min(vs.min_limit, inst.revisit_limit_or_inf(child.task));
    if (inst.is_constrained(child.task)) ++vs.constrained_count;
    vs.seq.push_back(child.task);
    assigned[child.task] = 1;
    --remaining;
  }

  void undo(const Child& child) {
    VehicleState& vs = vehicles[child.vehicle];
    vs.seq.pop_back();
    assigned[child.task] = 0;
    ++remaining;
    if (inst.is_constrained(child.task)) --vs.constrained_count;
    if (vs.seq.empty()) {
      vs.length_open = 0.0;
      vs.first_delivery = 0.0;
      vs.min_limit = kInfinity;
    } else {
      const int last = vs.seq.back();
      vs.length_open -= c.at(last, child.task);
      vs.first_delivery -= c.at(last, child.task) + c.at(child.task, kDepot) -
                           c.at(last, kDepot);
    }
    // min_limit cannot be rolled back incrementally; recompute
    if (!vs.seq.empty()) {
      double m = kInfinity;
      for (int id : vs.seq) m = std::min(m, inst.revisit_limit_or_inf(id));
      vs.min_limit = m;
    }
  }

  RoutePlan current_plan() const {
    RoutePlan plan;
    for (const VehicleState& vs : vehicles)
      if (!vs.seq.empty()) plan.cycles.push_back(vs.seq);
    return canonical_plan(std::move(plan));
  }

  void record_leaf() {
    const PlanMetrics metrics = evaluate_plan(inst, current_plan());
    if (!result.bfs_plan) {
      result.bfs_plan = current_plan();
      result.bfs_cost = metrics.z;
      result.bfs_nodes = result.nodes_explored;
      result.bfs_seconds = seconds();
    }
    if (metrics.z < result.final_cost) {
      result.final_plan = current_plan();
      result.final_cost = metrics.z;
    }
  }

  // Ordered depth-first search; the first root-to-leaf path follows the
  // best-first descent, backtracking visits the unexplored siblings LIFO.
  // Returns false when the node budget is exhausted.
  bool descend() {
    if (remaining == 0) {
      record_leaf();
      return true;
    }
    std::vector<Child> children = make_children();
    if (result.nodes_explored + static_cast<long>(children.size()) > config.node_limit) {
      result.nodes_explored = config.node_limit;
      return false;
    }
    result.nodes_explored += static_cast<long>(children.size());

    for (const Child& child : children) {
      if (std::isinf(child.raw)) break;  // infeasible children sort last; none are viable
      if (result.final_plan && child.raw >= result.final_cost) continue;
      if (config.trace) {
        (*config.trace) << "depth=" << (inst.n_tasks() - remaining) << " task=" << child.task
                        << " vehicle=" << child.vehicle << " c=" << child.raw
                        << " scaled=" << child.scaled << "\n";
      }
      apply(child);
      const bool keep_going = descend();
      undo(child);
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

TreeSearchResult tree_search(const Instance& instance, const TreeSearchConfig& config) {
  Searcher searcher(instance, config);
  const bool finished = searcher.descend();
  TreeSearchResult& result = searcher.result;
  result.total_seconds = searcher.seconds();
  if (!result.final_plan)
    result.status = TreeSearchStatus::NoFeasibleFound;
  else if (finished)
    result.status = TreeSearchStatus::Exhausted;
  else
    result.status = TreeSearchStatus::NodeLimit;
  return result;
}

}  // namespace pisr
