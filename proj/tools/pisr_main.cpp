#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pisr/bench.hpp"
#include "pisr/bnb.hpp"
#include "pisr/errors.hpp"
#include "pisr/generator.hpp"
#include "pisr/heuristic.hpp"
#include "pisr/io.hpp"
#include "pisr/milp.hpp"
#include "pisr/model_io.hpp"
#include "pisr/oracle.hpp"
#include "pisr/plot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNoIncumbent = 4;

void print_summary(const std::string& method, double cost, double time_s,
                   const std::string& status) {
  std::printf("method=%s cost=%.6f time=%.3f status=%s\n", method.c_str(), cost, time_s,
              status.c_str());
}

int cmd_gen(std::uint64_t seed, int tasks, int vehicles, double grid, bool farthest,
            int nearest_k, double factor, const std::string& out) {
  pisr::GenPolicy policy;
  policy.farthest = farthest;
  policy.nearest_k = nearest_k;
  policy.factor = factor;
  const pisr::Instance inst = pisr::generate_instance(seed, tasks, vehicles, grid, policy);
  const std::string text = pisr::instance_to_json(inst);
  if (out.empty())
    std::cout << text;
  else
    pisr::write_file(out, text);
  std::printf("instance_hash=%s tasks=%d constrained=%zu\n",
              pisr::instance_hash(inst).c_str(), inst.n_tasks(), inst.revisit_limits.size());
  return kExitOk;
}

int cmd_solve(const std::string& method, const std::string& in, const std::string& out,
              long node_limit, double time_limit) {
  const pisr::Instance inst = pisr::load_instance(in);
  const std::string hash = pisr::instance_hash(inst);

  std::optional<pisr::RoutePlan> plan;
  double cost = 0.0;
  std::string status;
  double time_s = 0.0;
  int exit_code = kExitOk;

  if (method == "heuristic") {
    pisr::TreeSearchConfig cfg;
    cfg.node_limit = node_limit;
    const pisr::TreeSearchResult res = pisr::tree_search(inst, cfg);
    time_s = res.total_seconds;
    switch (res.status) {
      case pisr::TreeSearchStatus::Exhausted: status = "exhausted"; break;
      case pisr::TreeSearchStatus::NodeLimit: status = "node_limit"; break;
      case pisr::TreeSearchStatus::NoFeasibleFound: status = "no_feasible_found"; break;
    }
    if (res.final_plan) {
      plan = res.final_plan;
      cost = res.final_cost;
      std::printf("bfs_cost=%.6f bfs_time=%.3f bfs_nodes=%ld nodes=%ld\n", res.bfs_cost,
                  res.bfs_seconds, res.bfs_nodes, res.nodes_explored);
    } else {
      exit_code = kExitNoIncumbent;
    }
  } else if (method == "oracle") {
    const auto start = std::chrono::steady_clock::now();
    const pisr::OracleResult res = pisr::brute_force_solve(inst);
    time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.status == pisr::OracleStatus::Optimal) {
      plan = res.plan;
      cost = res.objective;
      status = "optimal";
    } else {
      status = "infeasible";
      exit_code = kExitInfeasible;
    }
  } else if (method == "bnb-f1" || method == "bnb-f3") {
    const pisr::MilpModel model =
        method == "bnb-f1" ? pisr::build_f1(inst) : pisr::build_f3(inst);
    pisr::BnbConfig cfg;
    cfg.time_limit = time_limit;
    cfg.node_limit = node_limit;
    cfg.progress = &std::cerr;
    const pisr::BnbResult res = pisr::solve_milp(model, inst, cfg);
    time_s = res.wall_time;
    switch (res.status) {
      case pisr::BnbStatus::Optimal: status = "optimal"; break;
      case pisr::BnbStatus::FeasibleTimeout: status = "feasible_timeout"; break;
      case pisr::BnbStatus::NodeLimit: status = "node_limit"; break;
      case pisr::BnbStatus::Infeasible: status = "infeasible"; break;
    }
    if (res.incumbent_plan) {
      plan = res.incumbent_plan;
      cost = *res.incumbent_objective;
    } else {
      exit_code = res.status == pisr::BnbStatus::Infeasible ? kExitInfeasible : kExitNoIncumbent;
    }
  } else {
    std::fprintf(stderr, "unknown method '%s'\n", method.c_str());
    return kExitUsage;
  }

  print_summary(method, plan ? cost : -1.0, time_s, status);
  if (plan && !out.empty()) pisr::write_file(out, pisr::plan_to_json(*plan, hash));
  return exit_code;
}

int cmd_emit(const std::string& formulation, const std::string& format, const std::string& in,
             const std::string& out) {
  const pisr::Instance inst = pisr::load_instance(in);
  pisr::MilpModel model;
  if (formulation == "f1")
    model = pisr::build_f1(inst);
  else if (formulation == "f2")
    model = pisr::build_f2(inst);
  else if (formulation == "f3")
    model = pisr::build_f3(inst);
  else {
    std::fprintf(stderr, "unknown formulation '%s'\n", formulation.c_str());
    return kExitUsage;
  }
  pisr::ModelFormat fmt;
  if (format == "lp")
    fmt = pisr::ModelFormat::Lp;
  else if (format == "mps")
    fmt = pisr::ModelFormat::Mps;
  else {
    std::fprintf(stderr, "unknown format '%s'\n", format.c_str());
    return kExitUsage;
  }
  const std::string text = pisr::write_model(model, fmt);
  if (out.empty())
    std::cout << text;
  else
    pisr::write_file(out, text);
  std::printf("formulation=%s variables=%d constraints=%zu\n",
              pisr::to_string(model.tag).c_str(), model.n_vars(), model.constraints.size());
  return kExitOk;
}

int cmd_eval(const std::string& in, const std::string& plan_path) {
  const pisr::Instance inst = pisr::load_instance(in);
  const pisr::PlanFile pf = pisr::load_plan(plan_path);
  if (!pf.instance_hash.empty() && pf.instance_hash != pisr::instance_hash(inst)) {
    std::fprintf(stderr, "plan instance_hash does not match the instance\n");
    return kExitUsage;
  }
  const pisr::PlanMetrics m = pisr::evaluate_plan(inst, pf.plan);
  std::printf("task  u          v          delivery   R\n");
  for (int id = 1; id <= inst.n_tasks(); ++id) {
    const double r = inst.revisit_limit_or_inf(id);
    std::printf("%-5d %-10.3f %-10.3f %-10.3f %s\n", id, m.u.at(id), m.v.at(id),
                m.delivery.at(id), std::isinf(r) ? "-" : std::to_string(r).c_str());
  }
  for (std::size_t k = 0; k < m.cycle_lengths.size(); ++k)
    std::printf("cycle %zu length L=%.3f\n", k + 1, m.cycle_lengths[k]);
  std::printf("z=%.6f feasible=%s\n", m.z, m.feasible ? "yes" : "no");
  for (const auto& violation : m.violations)
    std::printf("violation task=%d L=%.3f R=%.3f\n", violation.task, violation.cycle_length,
                violation.limit);
  return m.feasible ? kExitOk : kExitInfeasible;
}

int cmd_bench(pisr::BenchConfig config, const std::string& out, bool latex) {
  if (const char* env = std::getenv("PISR_THREADS")) config.threads = std::atoi(env);
  const auto rows = pisr::run_bench(config);
  const std::string csv = pisr::bench_csv(config, rows);
  if (out.empty())
    std::cout << csv;
  else
    pisr::write_file(out, csv);
  if (latex) std::cout << pisr::bench_latex(config, rows);
  return kExitOk;
}

int cmd_plot(const std::string& in, const std::string& plan_path, const std::string& out) {
  const pisr::Instance inst = pisr::load_instance(in);
  const pisr::PlanFile pf = pisr::load_plan(plan_path);
  if (pf.instance_hash != pisr::instance_hash(inst)) {
    std::fprintf(stderr, "plan instance_hash does not match the instance\n");
    return kExitUsage;
  }
  pisr::evaluate_plan(inst, pf.plan);  // validate coverage before drawing
  const std::string svg = pisr::render_plan_svg(inst, pf.plan);
  pisr::write_file(out, svg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PISR multi-UAV routing planner"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  std::uint64_t seed = 1;
  int tasks = 10, vehicles = 4;
  double grid = 4000.0, factor = 1.1;
  bool no_farthest = false;
  int nearest_k = -1;
  std::string gen_out;
  gen->add_option("--seed", seed);
  gen->add_option("--tasks", tasks);
  gen->add_option("--vehicles", vehicles);
  gen->add_option("--grid", grid);
  gen->add_flag("--no-farthest", no_farthest, "skip the farthest-task limit");
  gen->add_option("--nearest-k", nearest_k, "tasks sharing the TSP-based limit (default 1+n/10)");
  gen->add_option("--factor", factor);
  gen->add_option("--out", gen_out);

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string method = "bnb-f3", solve_in, solve_out;
  long node_limit = 1000000;
  double time_limit = 0.0;
  solve->add_option("--method", method, "heuristic|oracle|bnb-f1|bnb-f3");
  solve->add_option("--in", solve_in)->required();
  solve->add_option("--out", solve_out);
  solve->add_option("--node-limit", node_limit);
  solve->add_option("--time-limit", time_limit, "seconds, 0 = unlimited");

  // emit
  auto* emit = app.add_subcommand("emit", "write the MILP model as LP or MPS text");
  std::string formulation = "f3", format = "lp", emit_in, emit_out;
  emit->add_option("--formulation", formulation, "f1|f2|f3");
  emit->add_option("--format", format, "lp|mps");
  emit->add_option("--in", emit_in)->required();
  emit->add_option("--out", emit_out);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a plan against an instance");
  std::string eval_in, eval_plan;
  eval->add_option("--in", eval_in)->required();
  eval->add_option("--plan", eval_plan)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run the benchmark suite");
  pisr::BenchConfig bcfg;
  std::string bench_out;
  bool latex = false;
  bench->add_option("--sizes", bcfg.sizes)->delimiter(',');
  bench->add_option("--count", bcfg.count);
  bench->add_option("--seed0", bcfg.seed0);
  bench->add_option("--vehicles", bcfg.n_v);
  bench->add_option("--grid", bcfg.grid);
  bench->add_option("--factor", bcfg.factor);
  bench->add_option("--methods", bcfg.methods)->delimiter(',');
  bench->add_option("--time-limit", bcfg.time_limit);
  bench->add_option("--node-limit", bcfg.heuristic_node_limit);
  bench->add_option("--out", bench_out);
  bench->add_flag("--latex", latex);

  // plot
  auto* plot = app.add_subcommand("plot", "render instance and plan as SVG");
  std::string plot_in, plot_plan, plot_out;
  plot->add_option("--in", plot_in)->required();
  plot->add_option("--plan", plot_plan)->required();
  plot->add_option("--out", plot_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (nearest_k < 0) nearest_k = std::max(1, std::min(tasks - 1, 1 + tasks / 10));
      return cmd_gen(seed, tasks, vehicles, grid, !no_farthest, nearest_k, factor, gen_out);
    }
    if (solve->parsed()) return cmd_solve(method, solve_in, solve_out, node_limit, time_limit);
    if (emit->parsed()) return cmd_emit(formulation, format, emit_in, emit_out);
    if (eval->parsed()) return cmd_eval(eval_in, eval_plan);
    if (bench->parsed()) return cmd_bench(bcfg, bench_out, latex);
    if (plot->parsed()) return cmd_plot(plot_in, plot_plan, plot_out);
  } catch (const pisr::PlanError& e) {
    std::fprintf(stderr, "plan error: %s\n", e.what());
    return kExitUsage;
  } catch (const pisr::HashMismatchError& e) {
    std::fprintf(stderr, "hash mismatch: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
