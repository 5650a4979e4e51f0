#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace linefig {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct WeightedLink {
  int a = 0;
  int b = 0;
  double weight = 1.0;
};

/// Fruchterman-Reingold layout in the unit square. Attraction is scaled by
/// link weight relative to the heaviest link. Deterministic for a seed.
std::vector<Point2> force_layout(int nodes, std::span<const WeightedLink> links, std::uint64_t seed,
                                 int iterations = 500);

}  // namespace linefig
