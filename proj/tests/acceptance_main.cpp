// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Heavier than the unit tests; run via ctest or directly.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "pisr/bench.hpp"
#include "pisr/bnb.hpp"
#include "pisr/generator.hpp"
#include "pisr/heuristic.hpp"
#include "pisr/io.hpp"
#include "pisr/lp.hpp"
#include "pisr/model_io.hpp"
#include "pisr/oracle.hpp"

using namespace pisr;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %d. %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

Instance suite_instance(std::uint64_t seed, int n, int n_v) {
  GenPolicy policy;
  policy.farthest = true;
  policy.nearest_k = n >= 7 ? 2 : 1;
  policy.factor = 1.1;
  return generate_instance(seed, n, n_v, 4000.0, policy);
}

// fixed-size parallel map: deterministic per index, order-independent
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(2, count);
  std::atomic<int> next{0};
  auto run = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size();
  return k == 0 ? 0.0 : (k % 2 ? xs[k / 2] : 0.5 * (xs[k / 2 - 1] + xs[k / 2]));
}

// 1. brute force, bnb(F1) and bnb(F3) agree on feasibility and objective
//    (1e-6) over 50 seeded instances, n in 4..8, n_v in {2,3}.
void criterion_oracle_milp_equivalence() {
  struct Cell {
    bool disagree = false;
    double gap = 0.0;
  };
  std::vector<Cell> cells(50);
  parallel_for(50, [&](int i) {
    const int n = 4 + i / 10;
    const int n_v = 2 + i % 2;
    const Instance inst = suite_instance(1000 + i, n, n_v);
    BnbConfig exact;
    exact.gap_tol = 0.0;  // objectives are compared at 1e-6 absolute
    const OracleResult oracle = brute_force_solve(inst);
    const BnbResult f1 = solve_milp(build_f1(inst), inst, exact);
    const BnbResult f3 = solve_milp(build_f3(inst), inst, exact);
    const bool oracle_feasible = oracle.status == OracleStatus::Optimal;
    const bool f1_feasible = f1.status == BnbStatus::Optimal;
    const bool f3_feasible = f3.status == BnbStatus::Optimal;
    if (oracle_feasible != f1_feasible || oracle_feasible != f3_feasible) {
      cells[i].disagree = true;
      return;
    }
    if (!oracle_feasible) return;
    const double d1 = std::fabs(*f1.incumbent_objective - oracle.objective);
    const double d3 = std::fabs(*f3.incumbent_objective - oracle.objective);
    cells[i].gap = std::max(d1, d3);
    if (d1 > 1e-6 || d3 > 1e-6) cells[i].disagree = true;
  });
  int checked = 50, disagreements = 0;
  double worst = 0.0;
  for (const Cell& cell : cells) {
    if (cell.disagree) ++disagreements;
    worst = std::max(worst, cell.gap);
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail), "%d instances, %d disagreements, worst gap %.2e",
                checked, disagreements, worst);
  report(1, "oracle-MILP equivalence (F1, F3 exact)", disagreements == 0, detail);
}

// 2. LP relaxation of F3 dominates F2 on 20 instances, strictly somewhere.
void criterion_lp_dominance() {
  int checked = 0, violations = 0, strict = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 5 + i % 4;
    const Instance inst = suite_instance(2000 + i, n, 3 + i % 2);
    const LpSolution f2 = solve_lp(build_f2(inst));
    const LpSolution f3 = solve_lp(build_f3(inst));
    if (f2.status != LpStatus::Optimal || f3.status != LpStatus::Optimal) {
      // an infeasible F3 relaxation dominates any F2 value; the reverse breaks
      if (f2.status == LpStatus::Infeasible && f3.status == LpStatus::Optimal) ++violations;
      continue;
    }
    ++checked;
    if (f3.objective < f2.objective - 1e-7) {
      ++violations;
      worst = std::max(worst, f2.objective - f3.objective);
    }
    if (f3.objective > f2.objective + 1e-7) ++strict;
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d relaxations, %d dominance violations, strict on %d, worst %.2e", checked,
                violations, strict, worst);
  report(2, "LP-relaxation dominance F3 >= F2", violations == 0 && strict >= 1, detail);
}

// 3. F3 needs no more search effort than F1: median nodes over 20 instances.
void criterion_node_effort() {
  std::vector<long> all_f1(20, -1), all_f3(20, -1);
  parallel_for(20, [&](int i) {
    const int n = 5 + i % 4;
    const Instance inst = suite_instance(2000 + i, n, 3 + i % 2);
    BnbConfig exact;
    exact.gap_tol = 0.0;
    const BnbResult f1 = solve_milp(build_f1(inst), inst, exact);
    const BnbResult f3 = solve_milp(build_f3(inst), inst, exact);
    if (f1.status != BnbStatus::Optimal || f3.status != BnbStatus::Optimal) return;
    all_f1[i] = f1.nodes_explored;
    all_f3[i] = f3.nodes_explored;
  });
  std::vector<double> nodes_f1, nodes_f3;
  int per_instance_violations = 0, usable = 0;
  for (int i = 0; i < 20; ++i) {
    if (all_f1[i] < 0) continue;
    ++usable;
    nodes_f1.push_back(static_cast<double>(all_f1[i]));
    nodes_f3.push_back(static_cast<double>(all_f3[i]));
    if (all_f3[i] > all_f1[i]) ++per_instance_violations;
  }
  const double med1 = median(nodes_f1), med3 = median(nodes_f3);
  const double violation_rate = usable ? static_cast<double>(per_instance_violations) / usable : 1.0;
  const bool pass = med3 <= med1 && violation_rate < 0.25;
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "%d solved pairs, median nodes F1 %.1f vs F3 %.1f, per-instance violations %d (%.0f%%)",
                usable, med1, med3, per_instance_violations, 100.0 * violation_rate);
  report(3, "search effort: F3 <= F1 (median nodes)", pass, detail);
}

// 4. Heuristic soundness and quality against the oracle at n = 8, n_v = 4.
void criterion_heuristic_quality() {
  int feasible_instances = 0, unsound = 0, below_oracle = 0, within_2x = 0;
  std::vector<double> ratios;
  std::uint64_t seed = 4000;
  while (feasible_instances < 100) {
    const Instance inst = suite_instance(seed++, 8, 4);
    const OracleResult oracle = brute_force_solve(inst);
    if (oracle.status != OracleStatus::Optimal) continue;  // feasible instances only
    ++feasible_instances;
    const TreeSearchResult res = tree_search(inst);
    if (!res.final_plan || !evaluate_plan(inst, *res.final_plan).feasible) {
      ++unsound;
      continue;
    }
    if (res.final_cost < oracle.objective - 1e-9) ++below_oracle;
    const double ratio = res.final_cost / oracle.objective;
    ratios.push_back(ratio);
    if (ratio <= 2.0 + 1e-12) ++within_2x;
  }
  const double med = median(ratios);
  int within_15 = 0;
  for (double r : ratios)
    if (r <= 1.5) ++within_15;
  const bool pass = unsound == 0 && below_oracle == 0 && within_2x >= 90;
  char detail[220];
  std::snprintf(detail, sizeof(detail),
                "100 feasible instances: unsound %d, below-oracle %d, within 2.0x %d, "
                "median ratio %.3f (within 1.5x: %d, report-only)",
                unsound, below_oracle, within_2x, med, within_15);
  report(4, "heuristic soundness and quality (n=8, n_v=4)", pass, detail);
}

// 5. Heuristic speed shape at n = 30, n_v = 4.
void criterion_heuristic_speed() {
  double worst_bfs = 0.0, worst_total = 0.0;
  bool all_found = true;
  for (int i = 0; i < 3; ++i) {
    GenPolicy policy;
    policy.farthest = true;
    policy.nearest_k = 4;
    const Instance inst = generate_instance(5000 + i, 30, 4, 4000.0, policy);
    const TreeSearchResult res = tree_search(inst);  // one-million-node budget
    all_found = all_found && res.bfs_plan.has_value();
    worst_bfs = std::max(worst_bfs, res.bfs_seconds);
    worst_total = std::max(worst_total, res.total_seconds);
  }
  const bool pass = all_found && worst_bfs <= 0.050 && worst_total <= 60.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "worst BFS %.1f ms (limit 50), worst full search %.2f s (limit 60)",
                1000.0 * worst_bfs, worst_total);
  report(5, "heuristic speed (n=30)", pass, detail);
}

// 6. Invariant suites (compact reruns; the unit tests carry the full set).
void criterion_invariants() {
  std::vector<std::string> broken;

  // u + v = L and lambda-scaling
  {
    const Instance inst = suite_instance(6100, 6, 2);
    Instance scaled = inst;
    scaled.depot_x *= 2.0;
    scaled.depot_y *= 2.0;
    for (Task& t : scaled.tasks) {
      t.x *= 2.0;
      t.y *= 2.0;
    }
    for (auto& [id, r] : scaled.revisit_limits) r *= 2.0;
    finalize_instance(scaled);
    const RoutePlan plan = {{{1, 3, 5}, {2, 4, 6}}};
    const PlanMetrics m = evaluate_plan(inst, plan);
    const PlanMetrics ms = evaluate_plan(scaled, plan);
    for (std::size_t k = 0; k < plan.cycles.size(); ++k)
      for (int id : plan.cycles[k])
        if (std::fabs(m.u.at(id) + m.v.at(id) - m.cycle_lengths[k]) > 1e-9)
          broken.push_back("u+v=L");
    for (int id = 1; id <= 6; ++id)
      if (ms.v.at(id) != 2.0 * m.v.at(id)) broken.push_back("lambda-scaling");
    if (ms.feasible != m.feasible) broken.push_back("lambda-scaling-verdict");
  }

  // model-evaluator feasibility bridge
  {
    const Instance inst = suite_instance(6200, 6, 2);
    const MilpModel models[] = {build_f1(inst), build_f2(inst), build_f3(inst)};
    for (std::uint64_t s = 0; s < 6; ++s) {
      RoutePlan plan;
      std::vector<int> order = {1, 2, 3, 4, 5, 6};
      std::rotate(order.begin(), order.begin() + s % 6, order.end());
      plan.cycles = {{order[0], order[1], order[2]}, {order[3], order[4], order[5]}};
      const bool feasible = evaluate_plan(inst, plan).feasible;
      for (const MilpModel& model : models)
        if (check_plan_against_model(model, inst, plan).feasible != feasible)
          broken.push_back("bridge-" + to_string(model.tag));
    }
  }

  // subtour exclusion at n = 3 was exhaustively covered in unit tests; here a
  // spot check that a forced subtour x is LP-infeasible in F1 and F2
  {
    const Instance inst = suite_instance(6300, 4, 2);
    for (int which = 0; which < 2; ++which) {
      const MilpModel model = which == 0 ? build_f1(inst) : build_f2(inst);
      std::vector<double> lo(model.n_vars()), up(model.n_vars());
      for (int j = 0; j < model.n_vars(); ++j) {
        lo[j] = model.variables[j].lower;
        up[j] = model.variables[j].upper;
      }
      for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
          if (i != j) lo[model.maps.x_at(i, j)] = up[model.maps.x_at(i, j)] = 0.0;
      auto fix1 = [&](int i, int j) { lo[model.maps.x_at(i, j)] = up[model.maps.x_at(i, j)] = 1.0; };
      fix1(0, 1);
      fix1(1, 0);
      fix1(2, 3);
      fix1(3, 4);
      fix1(4, 2);
      if (solve_lp(model, lo, up).status != LpStatus::Infeasible)
        broken.push_back("subtour-lp-" + to_string(model.tag));
    }
  }

  // oracle pruning soundness at n = 4
  {
    const Instance inst = suite_instance(6400, 4, 2);
    OracleConfig off;
    off.pruning = false;
    const OracleResult a = brute_force_solve(inst);
    const OracleResult b = brute_force_solve(inst, off);
    if (a.status != b.status) broken.push_back("oracle-pruning-status");
    if (a.status == OracleStatus::Optimal &&
        (std::fabs(a.objective - b.objective) > 1e-12 || a.plan->cycles != b.plan->cycles))
      broken.push_back("oracle-pruning");
  }

  // heuristic determinism and budget monotonicity
  {
    const Instance inst = suite_instance(6500, 7, 3);
    const TreeSearchResult a = tree_search(inst);
    const TreeSearchResult b = tree_search(inst);
    if (a.nodes_explored != b.nodes_explored || a.final_cost != b.final_cost)
      broken.push_back("heuristic-determinism");
    double prev = kInfinity;
    for (long limit : {20L, 500L, 50000L}) {
      TreeSearchConfig cfg;
      cfg.node_limit = limit;
      const TreeSearchResult r = tree_search(inst, cfg);
      if (r.final_plan) {
        if (r.final_cost > prev + 1e-12) broken.push_back("heuristic-budget-monotonicity");
        prev = r.final_cost;
      }
    }
  }

  // write/parse fixpoint
  {
    const Instance inst = suite_instance(6600, 5, 2);
    for (ModelFormat fmt : {ModelFormat::Lp, ModelFormat::Mps}) {
      const std::string once = write_model(build_f3(inst), fmt);
      if (write_model(parse_model(once, fmt), fmt) != once) broken.push_back("fixpoint");
    }
  }

  // instance-generation byte determinism
  {
    const Instance a = suite_instance(6700, 8, 3);
    const Instance b = suite_instance(6700, 8, 3);
    if (instance_to_json(a) != instance_to_json(b)) broken.push_back("gen-determinism");
  }

  std::string detail = broken.empty() ? "all invariant groups hold" : "broken:";
  for (const std::string& b : broken) detail += " " + b;
  report(6, "invariant suites", broken.empty(), detail);
}

// 7. Reduced-scale protocol replication: bench at n = 10, 10 instances,
//    4 vehicles; bnb-f3 must reach optimal on every instance within 120 s.
void criterion_protocol() {
  BenchConfig config;
  config.sizes = {10};
  config.count = 10;
  config.seed0 = 7000;
  config.n_v = 4;
  config.methods = {"bnb-f3", "heuristic"};
  config.time_limit = 120.0;
  const std::vector<BenchRow> rows = run_bench(config);
  const std::string csv = bench_csv(config, rows);
  write_file("acceptance_table1.csv", csv);

  int optimal = 0;
  double worst_time = 0.0;
  bool rows_consistent = csv.rfind("instance,n,n_v,bnb_f3_cost,bnb_f3_time_s,bnb_f3_status,"
                                   "heuristic_bfs_cost,",
                                   0) == 0 &&
                         rows.size() == 10;
  for (const BenchRow& row : rows) {
    const auto& f3 = row.results.at("bnb-f3");
    if (f3.status == "optimal") ++optimal;
    worst_time = std::max(worst_time, f3.time_s);
    const auto& heur = row.results.at("heuristic");
    if (heur.status != "feasible") rows_consistent = false;
    if (f3.status == "optimal" && heur.cost < f3.cost - 1e-6) rows_consistent = false;
  }
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "bnb-f3 optimal on %d/10 n=10 instances, worst time %.1f s, csv -> acceptance_table1.csv",
                optimal, worst_time);
  report(7, "protocol replication at reduced scale", optimal == 10 && rows_consistent, detail);
}

}  // namespace

int main() {
  std::puts("PISR acceptance suite");
  criterion_oracle_milp_equivalence();
  criterion_lp_dominance();
  criterion_node_effort();
  criterion_heuristic_quality();
  criterion_heuristic_speed();
  criterion_invariants();
  criterion_protocol();
  if (failures == 0)
    std::puts("all acceptance criteria passed");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
