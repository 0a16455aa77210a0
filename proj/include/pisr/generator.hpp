#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "pisr/instance.hpp"

namespace pisr {

// Revisit-limit policy applied to a freshly generated instance.
//   farthest   - the task with the largest depot round trip gets
//                R = factor * (c[d][i] + c[i][d]).
//   nearest_k  - the k tasks nearest the depot (farthest-constrained task
//                excluded) share R = factor * optimal TSP cost over those
//                tasks plus the depot.
struct GenPolicy {
  bool farthest = true;
  int nearest_k = 0;
  double factor = 1.1;
  std::optional<std::pair<double, double>> depot;  // default: grid center
};

// Task coordinates i.i.d. uniform on [0, grid_size]^2 from SplitMix64(seed),
// unit speed, zero service times. Pure function of its arguments.
// Throws BadPolicyError when nearest_k exceeds the exhaustive TSP cap or the
// number of tasks available.
Instance generate_instance(std::uint64_t seed, int n_tasks, int n_v, double grid_size,
                           const GenPolicy& policy = {});

}  // namespace pisr
