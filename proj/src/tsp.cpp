#include "pisr/tsp.hpp"

#include <algorithm>
#include <string>

#include "pisr/errors.hpp"

namespace pisr {

TspResult tsp_exact(const std::vector<int>& node_set, const TravelMatrix& travel) {
  if (static_cast<int>(node_set.size()) > kTspExactMaxNodes)
    throw TooLargeError("tsp_exact called with " + std::to_string(node_set.size()) +
                        " nodes (cap " + std::to_string(kTspExactMaxNodes) + ")");

  std::vector<int> rest;
  bool has_depot = false;
  for (int id : node_set) {
    if (id == kDepot)
      has_depot = true;
    else
      rest.push_back(id);
  }
  if (!has_depot) throw TooLargeError("tsp_exact node set must contain the depot");
  std::sort(rest.begin(), rest.end());

  TspResult best;
  best.cost = kInfinity;
  if (rest.empty()) {
    best.tour = {kDepot};
    best.cost = 0.0;
    return best;
  }

  std::vector<int> perm = rest;
  do {
    double cost = travel.at(kDepot, perm.front());
    for (std::size_t k = 0; k + 1 < perm.size(); ++k) cost += travel.at(perm[k], perm[k + 1]);
    cost += travel.at(perm.back(), kDepot);
    if (cost < best.cost) {
      best.cost = cost;
      best.tour.assign(1, kDepot);
      best.tour.insert(best.tour.end(), perm.begin(), perm.end());
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace pisr
