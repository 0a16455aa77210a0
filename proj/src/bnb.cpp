#include "pisr/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "pisr/errors.hpp"
#include "pisr/io.hpp"

namespace pisr {

namespace {

struct Node {
  double bound = -kInfinity;  // inherited lower bound (parent LP objective)
  long id = 0;
  std::vector<std::pair<int, char>> fixings;  // (binary var index, 0/1)
};

struct NodeOrder {
  // min-heap on (bound, id): best bound first, FIFO among equal bounds
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

double relative_gap(double incumbent, double bound) {
  return (incumbent - bound) / std::max(std::fabs(incumbent), 1.0);
}

}  // namespace

BnbResult solve_milp(const MilpModel& model, const Instance& instance, const BnbConfig& config) {
  if (model.instance_hash != instance_hash(instance))
    throw HashMismatchError("solve_milp: model was built from a different instance");

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const int n_vars = model.n_vars();
  std::vector<double> base_lo(n_vars), base_up(n_vars);
  std::vector<int> binaries;
  for (int j = 0; j < n_vars; ++j) {
    base_lo[j] = model.variables[j].lower;
    base_up[j] = model.variables[j].upper;
    if (model.variables[j].kind == VarKind::Binary) binaries.push_back(j);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> heap;
  std::vector<Node> stack;  // depth-first mode
  auto push = [&](Node&& node) {
    if (config.depth_first)
      stack.push_back(std::move(node));
    else
      heap.push(std::move(node));
  };
  auto empty = [&] { return config.depth_first ? stack.empty() : heap.empty(); };
  auto pop = [&] {
    if (config.depth_first) {
      Node node = std::move(stack.back());
      stack.pop_back();
      return node;
    }
    Node node = heap.top();
    heap.pop();
    return node;
  };

  BnbResult result;
  long next_id = 0;
  push(Node{-kInfinity, next_id++, {}});

  std::optional<double> incumbent;
  std::optional<RoutePlan> incumbent_plan;
  double bound = -kInfinity;
  bool stopped_by_time = false;
  bool stopped_by_nodes = false;

  std::vector<double> lo(n_vars), up(n_vars);
  while (!empty()) {
    if (config.time_limit > 0.0 && elapsed() > config.time_limit) {
      stopped_by_time = true;
      break;
    }
    if (config.node_limit > 0 && result.nodes_explored >= config.node_limit) {
      stopped_by_nodes = true;
      break;
    }

    Node node = pop();
    if (!config.depth_first) bound = std::max(bound, node.bound);
    if (incumbent && node.bound >= *incumbent - 1e-9) continue;  // cannot improve
    if (incumbent && relative_gap(*incumbent, bound) <= config.gap_tol) break;

    lo = base_lo;
    up = base_up;
    for (const auto& [var, value] : node.fixings) {
      lo[var] = value;
      up[var] = value;
    }

    const LpSolution lp = solve_lp(model, lo, up, config.lp);
    ++result.nodes_explored;
    if (config.on_node) config.on_node(result.nodes_explored, bound);
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status != LpStatus::Optimal)
      throw std::runtime_error(
          "solve_milp: node relaxation failed to solve (numerical trouble); result would be "
          "unsound");
    if (incumbent && lp.objective >= *incumbent - 1e-9) continue;

    // most fractional binary; ties to the lowest variable index
    int branch_var = -1;
    double best_frac = 1e-6;
    for (int j : binaries) {
      const double value = lp.values[j];
      const double frac = std::fabs(value - std::round(value));
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        branch_var = j;
      }
    }

    if (branch_var < 0) {
      // integral relaxation: accept only if the decoded plan checks out
      try {
        const RoutePlan plan = plan_from_edges(instance, model, lp.values);
        const PlanMetrics metrics = evaluate_plan(instance, plan);
        if (metrics.feasible && (!incumbent || metrics.z < *incumbent - 1e-12)) {
          incumbent = metrics.z;
          incumbent_plan = plan;
          if (config.progress) {
            (*config.progress) << "node=" << result.nodes_explored << " bound=" << bound
                               << " incumbent=" << *incumbent
                               << " gap=" << relative_gap(*incumbent, bound) << "\n";
          }
        }
      } catch (const DecodeError&) {
        // tolerance leak or subtour: reject the candidate, keep searching
      } catch (const PlanError&) {
      }
      continue;
    }

    Node down{lp.objective, next_id++, node.fixings};
    down.fixings.emplace_back(branch_var, 0);
    Node up_child{lp.objective, next_id++, std::move(node.fixings)};
    up_child.fixings.emplace_back(branch_var, 1);
    // depth-first pops LIFO, so push the 0-branch first to explore x=1 first
    push(std::move(down));
    push(std::move(up_child));
  }

  result.wall_time = elapsed();
  const bool exhausted = empty() && !stopped_by_time && !stopped_by_nodes;

  if (config.depth_first && !stack.empty()) {
    double open_min = kInfinity;
    for (const Node& node : stack) open_min = std::min(open_min, node.bound);
    bound = std::max(bound, open_min);
  }
  if (incumbent) {
    // remaining open nodes can only tighten up to the incumbent
    if (exhausted) bound = *incumbent;
    if (!config.depth_first && !heap.empty()) bound = std::max(bound, heap.top().bound);
    bound = std::min(bound, *incumbent);
    result.incumbent_objective = incumbent;
    result.incumbent_plan = std::move(incumbent_plan);
    result.best_bound = bound;
    result.gap = relative_gap(*incumbent, bound);
    if (result.gap <= config.gap_tol)
      result.status = BnbStatus::Optimal;
    else if (stopped_by_nodes)
      result.status = BnbStatus::NodeLimit;
    else
      result.status = BnbStatus::FeasibleTimeout;
  } else {
    result.best_bound = bound;
    if (exhausted)
      result.status = BnbStatus::Infeasible;
    else
      result.status = stopped_by_nodes ? BnbStatus::NodeLimit : BnbStatus::FeasibleTimeout;
  }
  return result;
}

}  // namespace pisr
