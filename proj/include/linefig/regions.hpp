#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "linefig/skyculture.hpp"

namespace linefig {

/// All figures, from any culture, that contain one root star.
struct SkyRegion {
  std::string root_star;
  std::vector<std::string> members;  // figure keys, sorted
};

/// One region per star linked in at least `min_count` figures, ordered by
/// member count (descending) and then star id.
std::vector<SkyRegion> root_star_regions(std::span<const LineFigure> figures, int min_count = 20);

/// Shannon entropy of the members' cluster distribution divided by log(k).
/// Throws when a member has no label, k < 2, or more than k labels occur.
double diversity(const SkyRegion& region, const std::map<std::string, std::string>& cluster_of, int k);

/// Normalized entropy of a count vector over k bins. Counts are summed in
/// sorted order so the value does not depend on bin order.
double normalized_entropy(std::vector<int> counts, int k);

}  // namespace linefig
