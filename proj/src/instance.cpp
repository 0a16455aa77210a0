#include "pisr/instance.hpp"

#include <cmath>
#include <string>

#include "pisr/errors.hpp"

namespace pisr {

TravelMatrix build_travel_matrix(const Instance& instance) {
  const int n = instance.n_tasks();
  TravelMatrix c(n);

  auto coord_x = [&](int i) { return i == kDepot ? instance.depot_x : instance.task(i).x; };
  auto coord_y = [&](int i) { return i == kDepot ? instance.depot_y : instance.task(i).y; };
  auto service = [&](int i) { return i == kDepot ? 0.0 : instance.task(i).service; };

  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double dx = coord_x(i) - coord_x(j);
      const double dy = coord_y(i) - coord_y(j);
      c.set(i, j, std::sqrt(dx * dx + dy * dy) / instance.speed + service(j));
    }
  }
  return c;
}

void finalize_instance(Instance& instance) {
  const int n = instance.n_tasks();
  if (n < 1) throw IoError("instance has no tasks");
  if (!(instance.speed > 0.0)) throw IoError("speed must be > 0");
  if (instance.n_v < 1) throw IoError("n_v must be >= 1");
  for (int i = 0; i < n; ++i) {
    if (instance.tasks[i].id != i + 1)
      throw IoError("task ids must be contiguous 1..n (got id " +
                    std::to_string(instance.tasks[i].id) + " at position " + std::to_string(i) + ")");
    if (instance.tasks[i].service < 0.0)
      throw IoError("service time must be >= 0 for task " + std::to_string(i + 1));
  }
  for (const auto& [id, r] : instance.revisit_limits) {
    if (id < 1 || id > n) throw IoError("revisit limit for unknown task " + std::to_string(id));
    if (!(r > 0.0)) throw IoError("revisit limit must be > 0 for task " + std::to_string(id));
  }
  instance.travel = build_travel_matrix(instance);
}

}  // namespace pisr
