#pragma once

#include <vector>

#include "pisr/instance.hpp"

namespace pisr {

// Exhaustive-enumeration cap for tsp_exact (node count, depot included).
inline constexpr int kTspExactMaxNodes = 10;

struct TspResult {
  std::vector<int> tour;  // starts at the depot; closing arc implied
  double cost = 0.0;
};

// Minimum-cost directed cycle through every node of node_set (which must
// contain the depot). Enumerates permutations in lexicographic order, so
// ties resolve to the lexicographically smallest tour.
// Throws TooLargeError when |node_set| > kTspExactMaxNodes.
TspResult tsp_exact(const std::vector<int>& node_set, const TravelMatrix& travel);

}  // namespace pisr
