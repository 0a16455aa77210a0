#include "pisr/generator.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "pisr/errors.hpp"
#include "pisr/rng.hpp"
#include "pisr/tsp.hpp"

namespace pisr {

Instance generate_instance(std::uint64_t seed, int n_tasks, int n_v, double grid_size,
                           const GenPolicy& policy) {
  if (n_tasks < 1) throw BadPolicyError("n_tasks must be >= 1");
  if (n_v < 1) throw BadPolicyError("n_v must be >= 1");
  if (!(grid_size > 0.0)) throw BadPolicyError("grid_size must be > 0");
  if (policy.nearest_k < 0) throw BadPolicyError("nearest_k must be >= 0");
  if (policy.nearest_k + 1 > kTspExactMaxNodes)
    throw BadPolicyError("nearest_k " + std::to_string(policy.nearest_k) +
                         " exceeds the exhaustive TSP cap of " +
                         std::to_string(kTspExactMaxNodes - 1) + " tasks");
  const int reserved = policy.farthest ? 1 : 0;
  if (policy.nearest_k > n_tasks - reserved)
    throw BadPolicyError("nearest_k exceeds the number of available tasks");

  Instance inst;
  inst.seed = seed;
  inst.speed = 1.0;
  inst.n_v = n_v;
  if (policy.depot) {
    inst.depot_x = policy.depot->first;
    inst.depot_y = policy.depot->second;
  } else {
    inst.depot_x = grid_size / 2.0;
    inst.depot_y = grid_size / 2.0;
  }

  SplitMix64 rng(seed);
  for (int id = 1; id <= n_tasks; ++id) {
    Task t;
    t.id = id;
    t.x = rng.next_unit() * grid_size;
    t.y = rng.next_unit() * grid_size;
    t.service = 0.0;
    inst.tasks.push_back(t);
  }
  inst.travel = build_travel_matrix(inst);

  const TravelMatrix& c = inst.travel;
  auto round_trip = [&](int id) { return c.at(kDepot, id) + c.at(id, kDepot); };

  int farthest_id = 0;
  if (policy.farthest) {
    for (int id = 1; id <= n_tasks; ++id)
      if (farthest_id == 0 || round_trip(id) > round_trip(farthest_id)) farthest_id = id;
    inst.revisit_limits[farthest_id] = policy.factor * round_trip(farthest_id);
  }

  if (policy.nearest_k > 0) {
    std::vector<int> ids;
    for (int id = 1; id <= n_tasks; ++id)
      if (id != farthest_id) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      const double ra = round_trip(a), rb = round_trip(b);
      return ra != rb ? ra < rb : a < b;
    });
    ids.resize(policy.nearest_k);

    std::vector<int> nodes = {kDepot};
    nodes.insert(nodes.end(), ids.begin(), ids.end());
    const double limit = policy.factor * tsp_exact(nodes, c).cost;
    for (int id : ids) inst.revisit_limits[id] = limit;
  }

  finalize_instance(inst);
  return inst;
}

}  // namespace pisr
