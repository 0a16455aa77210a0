#include "pisr/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "pisr/bnb.hpp"
#include "pisr/generator.hpp"
#include "pisr/heuristic.hpp"
#include "pisr/oracle.hpp"
#include "pisr/tsp.hpp"

namespace pisr {

namespace {

std::string csv_num(double v) {
  if (std::isinf(v) || std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string table_num(double v) {
  if (std::isinf(v) || std::isnan(v)) return "--";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.0f", v);
  return buf;
}

std::string column_stem(const std::string& method) {
  std::string stem = method;
  std::replace(stem.begin(), stem.end(), '-', '_');
  return stem;
}

BenchMethodResult run_cell(const Instance& instance, const std::string& method,
                           const BenchConfig& config) {
  BenchMethodResult r;
  const auto start = std::chrono::steady_clock::now();
  auto stop = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    if (method == "heuristic") {
      TreeSearchConfig cfg;
      cfg.node_limit = config.heuristic_node_limit;
      const TreeSearchResult res = tree_search(instance, cfg);
      r.bfs_cost = res.bfs_cost;
      r.bfs_time_s = res.bfs_seconds;
      r.cost = res.final_cost;
      r.final_time_s = res.total_seconds;
      r.time_s = res.total_seconds;
      r.nodes = res.nodes_explored;
      r.status = res.final_plan ? "feasible" : "none**";
    } else if (method == "oracle") {
      const OracleResult res = brute_force_solve(instance);
      r.time_s = stop();
      r.nodes = res.nodes;
      if (res.status == OracleStatus::Optimal) {
        r.cost = res.objective;
        r.status = "optimal";
      } else {
        r.status = "infeasible";
      }
    } else if (method == "bnb-f1" || method == "bnb-f3") {
      const MilpModel model = method == "bnb-f1" ? build_f1(instance) : build_f3(instance);
      BnbConfig cfg;
      cfg.time_limit = config.time_limit;
      cfg.gap_tol = 0.0;  // row costs are compared at 1e-6 absolute
      const BnbResult res = solve_milp(model, instance, cfg);
      r.time_s = res.wall_time;
      r.nodes = res.nodes_explored;
      if (res.incumbent_objective) r.cost = *res.incumbent_objective;
      switch (res.status) {
        case BnbStatus::Optimal: r.status = "optimal"; break;
        case BnbStatus::Infeasible: r.status = "infeasible"; break;
        case BnbStatus::FeasibleTimeout:
        case BnbStatus::NodeLimit:
          r.status = res.incumbent_objective ? "feasible*" : "none**";
          break;
      }
    } else {
      r.status = "error:unknown-method";
    }
  } catch (const std::exception& e) {
    r.status = std::string("error:") + e.what();
    r.time_s = stop();
  }
  return r;
}

}  // namespace

int bench_nearest_k(int n_tasks) {
  const int k = 1 + n_tasks / 10;
  return std::max(1, std::min({k, n_tasks - 1, kTspExactMaxNodes - 1}));
}

Instance bench_instance(const BenchConfig& config, int n_tasks, std::uint64_t seed) {
  GenPolicy policy;
  policy.farthest = true;
  policy.nearest_k = bench_nearest_k(n_tasks);
  policy.factor = config.factor;
  return generate_instance(seed, n_tasks, config.n_v, config.grid, policy);
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  struct Cell {
    int row;
    std::string method;
  };
  std::vector<BenchRow> rows;
  std::vector<Instance> instances;
  std::uint64_t seed = config.seed0;
  int id = 0;
  for (int n : config.sizes) {
    for (int i = 0; i < config.count; ++i, ++seed) {
      BenchRow row;
      row.instance_id = std::to_string(++id);
      row.seed = seed;
      row.n = n;
      row.n_v = config.n_v;
      rows.push_back(std::move(row));
      instances.push_back(bench_instance(config, n, seed));
    }
  }

  std::vector<Cell> cells;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const std::string& m : config.methods) cells.push_back({static_cast<int>(r), m});

  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (const Cell& cell : cells)
      rows[cell.row].results[cell.method] = run_cell(instances[cell.row], cell.method, config);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<BenchMethodResult> cell_results(cells.size());
    auto worker = [&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= cells.size()) break;
        cell_results[k] = run_cell(instances[cells[k].row], cells[k].method, config);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (std::size_t k = 0; k < cells.size(); ++k)
      rows[cells[k].row].results[cells[k].method] = cell_results[k];
  }
  return rows;
}

std::string bench_csv(const BenchConfig& config, const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,n,n_v";
  for (const std::string& m : config.methods) {
    const std::string stem = column_stem(m);
    if (m == "heuristic")
      out << ",heuristic_bfs_cost,heuristic_bfs_time_s,heuristic_final_cost"
          << ",heuristic_final_time_s,heuristic_nodes,heuristic_status";
    else
      out << "," << stem << "_cost," << stem << "_time_s," << stem << "_status";
  }
  out << "\n";
  for (const BenchRow& row : rows) {
    out << row.instance_id << "," << row.n << "," << row.n_v;
    for (const std::string& m : config.methods) {
      const auto it = row.results.find(m);
      const BenchMethodResult r =
          it == row.results.end() ? BenchMethodResult{"missing"} : it->second;
      if (m == "heuristic")
        out << "," << csv_num(r.bfs_cost) << "," << csv_num(r.bfs_time_s) << ","
            << csv_num(r.cost) << "," << csv_num(r.final_time_s) << "," << r.nodes << ","
            << r.status;
      else
        out << "," << csv_num(r.cost) << "," << csv_num(r.time_s) << "," << r.status;
    }
    out << "\n";
  }
  return out.str();
}

std::string bench_latex(const BenchConfig& config, const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "\\begin{tabular}{cc";
  for (const std::string& m : config.methods) out << (m == "heuristic" ? "rrrr" : "rr");
  out << "}\n\\toprule\nInstance \\# & $|T|$";
  for (const std::string& m : config.methods) {
    if (m == "heuristic")
      out << " & BFS Cost & BFS CPU time & Final Cost & Final CPU time";
    else
      out << " & " << column_stem(m) << " Cost & CPU time";
  }
  out << " \\\\\n\\midrule\n";
  for (const BenchRow& row : rows) {
    out << row.instance_id << " & " << row.n;
    for (const std::string& m : config.methods) {
      const auto it = row.results.find(m);
      if (it == row.results.end()) {
        out << (m == "heuristic" ? " & -- & -- & -- & --" : " & -- & --");
        continue;
      }
      const BenchMethodResult& r = it->second;
      const bool timeout = r.status == "feasible*";
      const bool none = r.status == "none**";
      const std::string mark = timeout ? "$^*$" : (none ? "$^{**}$" : "");
      auto cell = [&](double v) { return none ? std::string("$^{**}$") : table_num(v) + mark; };
      if (m == "heuristic") {
        char b[64], f[64];
        std::snprintf(b, sizeof(b), "%.3f", r.bfs_time_s);
        std::snprintf(f, sizeof(f), "%.3f", r.final_time_s);
        out << " & " << table_num(r.bfs_cost) << " & " << b << " & " << table_num(r.cost)
            << " & " << f;
      } else {
        char t[64];
        std::snprintf(t, sizeof(t), "%.2f", r.time_s);
        out << " & " << cell(r.cost) << " & " << (none ? "$^{**}$" : std::string(t) + mark);
      }
    }
    out << " \\\\\n";
  }
  out << "\\bottomrule\n\\end{tabular}\n";
  return out.str();
}

}  // namespace pisr
