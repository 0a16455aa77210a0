#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pisr/instance.hpp"

namespace pisr {

struct BenchMethodResult {
  std::string status;     // optimal | feasible* | none** | infeasible | error:<why>
  double cost = kInfinity;
  double time_s = 0.0;
  // heuristic extras
  double bfs_cost = kInfinity;
  double bfs_time_s = 0.0;
  double final_time_s = 0.0;
  long nodes = 0;
};

struct BenchRow {
  std::string instance_id;
  std::uint64_t seed = 0;
  int n = 0;
  int n_v = 0;
  std::map<std::string, BenchMethodResult> results;  // method -> result
};

struct BenchConfig {
  std::vector<int> sizes = {6, 8, 10};
  int count = 10;  // instances per size
  std::uint64_t seed0 = 1;
  int n_v = 4;
  double grid = 4000.0;
  double factor = 1.1;
  std::vector<std::string> methods = {"heuristic", "bnb-f1", "bnb-f3"};
  double time_limit = 120.0;          // seconds per bnb cell
  long heuristic_node_limit = 1000000;
  int threads = 1;  // worker pool over (instance, method) cells
};

// Revisit-limit policy used for benchmark instances: the farthest task plus
// the 1 + n/10 nearest tasks (2 at n=10, 3 at n=20, 4 at n=30).
int bench_nearest_k(int n_tasks);

Instance bench_instance(const BenchConfig& config, int n_tasks, std::uint64_t seed);

// Runs every method on every generated instance. Failures inside a cell are
// recorded in that cell's status; the suite never aborts.
std::vector<BenchRow> run_bench(const BenchConfig& config);

// CSV: "instance,n,n_v" then per method its cost/time/status columns
// (heuristic rows carry bfs and final columns plus the node count).
std::string bench_csv(const BenchConfig& config, const std::vector<BenchRow>& rows);

// The same rows in the paper-style LaTeX table layout.
std::string bench_latex(const BenchConfig& config, const std::vector<BenchRow>& rows);

}  // namespace pisr
