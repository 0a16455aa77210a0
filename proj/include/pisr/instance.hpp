#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace pisr {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Node index 0 is the depot; task t_i occupies index i (ids are contiguous 1..n).
inline constexpr int kDepot = 0;

struct Task {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double service = 0.0;  // seconds spent performing the task
};

// c[i][j] = travel time i -> j plus service time of j (zero for the depot).
// The diagonal is unused and stored as +infinity.
class TravelMatrix {
 public:
  TravelMatrix() = default;
  explicit TravelMatrix(int n_tasks)
      : n_(n_tasks), c_((n_tasks + 1) * (n_tasks + 1), kInfinity) {}

  int n_tasks() const { return n_; }
  int n_nodes() const { return n_ + 1; }

  double at(int i, int j) const { return c_[i * (n_ + 1) + j]; }
  void set(int i, int j, double value) { c_[i * (n_ + 1) + j] = value; }

 private:
  int n_ = 0;
  std::vector<double> c_;
};

struct Instance {
  std::vector<Task> tasks;  // sorted by id; ids are exactly 1..n
  double depot_x = 0.0;
  double depot_y = 0.0;
  double speed = 1.0;                   // meters/second, > 0
  int n_v = 1;                          // fleet size
  std::map<int, double> revisit_limits; // task id -> R_i seconds; absent = unconstrained
  std::optional<std::uint64_t> seed;    // present for generated instances

  TravelMatrix travel;  // derived, built by finalize_instance

  int n_tasks() const { return static_cast<int>(tasks.size()); }
  const Task& task(int id) const { return tasks[id - 1]; }

  double revisit_limit_or_inf(int id) const {
    auto it = revisit_limits.find(id);
    return it == revisit_limits.end() ? kInfinity : it->second;
  }
  bool is_constrained(int id) const { return revisit_limits.count(id) > 0; }
};

// Euclidean travel time matrix with service times added at the head node.
TravelMatrix build_travel_matrix(const Instance& instance);

// Validates the instance invariants and builds the cached travel matrix.
// Throws IoError on violations (non-contiguous ids, speed <= 0, ...).
void finalize_instance(Instance& instance);

}  // namespace pisr
