#pragma once

#include <cstdint>
#include <vector>

#include "pisr/generator.hpp"
#include "pisr/instance.hpp"
#include "pisr/plan.hpp"
#include "pisr/rng.hpp"

namespace pisrtest {

// Instance from explicit coordinates; ids assigned 1..n in order.
inline pisr::Instance make_instance(double depot_x, double depot_y,
                                    const std::vector<std::pair<double, double>>& pts,
                                    int n_v = 1, double speed = 1.0) {
  pisr::Instance inst;
  inst.depot_x = depot_x;
  inst.depot_y = depot_y;
  inst.speed = speed;
  inst.n_v = n_v;
  for (std::size_t i = 0; i < pts.size(); ++i)
    inst.tasks.push_back({static_cast<int>(i) + 1, pts[i].first, pts[i].second, 0.0});
  pisr::finalize_instance(inst);
  return inst;
}

// Small random instance following the paper-style policy, scaled down.
inline pisr::Instance random_instance(std::uint64_t seed, int n, int n_v,
                                      bool constrained = true) {
  pisr::GenPolicy policy;
  policy.farthest = constrained;
  policy.nearest_k = constrained ? (n >= 7 ? 2 : 1) : 0;
  return pisr::generate_instance(seed, n, n_v, 4000.0, policy);
}

// Uniformly random valid plan: tasks shuffled, split into <= n_v cycles.
inline pisr::RoutePlan random_plan(const pisr::Instance& inst, std::uint64_t seed) {
  pisr::SplitMix64 rng(seed);
  const int n = inst.n_tasks();
  std::vector<int> order;
  for (int id = 1; id <= n; ++id) order.push_back(id);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.next_u64() % (i + 1)]);

  const int cycles = 1 + static_cast<int>(rng.next_u64() % inst.n_v);
  pisr::RoutePlan plan;
  plan.cycles.assign(std::min(cycles, n), {});
  for (int i = 0; i < n; ++i)
    plan.cycles[i % plan.cycles.size()].push_back(order[i]);
  return plan;
}

}  // namespace pisrtest
