#include "linefig/regions.hpp"

#include <algorithm>
#include <cmath>

#include "linefig/errors.hpp"

namespace linefig {

std::vector<SkyRegion> root_star_regions(std::span<const LineFigure> figures, int min_count) {
  if (min_count < 1) throw ValidationError("regions: min_count must be at least 1");
  std::map<std::string, std::vector<std::string>> by_star;
  for (const auto& f : figures) {
    for (const auto& star : f.stars()) by_star[star].push_back(f.key());
  }
  std::vector<SkyRegion> out;
  for (auto& [star, members] : by_star) {
    if (static_cast<int>(members.size()) < min_count) continue;
    std::sort(members.begin(), members.end());
    out.push_back({star, std::move(members)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SkyRegion& a, const SkyRegion& b) { return a.members.size() > b.members.size(); });
  return out;
}

double normalized_entropy(std::vector<int> counts, int k) {
  if (k < 2) throw ValidationError("diversity: k must be at least 2");
  if (static_cast<int>(counts.size()) > k) throw ValidationError("diversity: more bins than k");
  std::sort(counts.begin(), counts.end());
  double total = 0.0;
  for (int c : counts) {
    if (c < 0) throw ValidationError("diversity: negative count");
    total += c;
  }
  if (total == 0.0) throw ValidationError("diversity: empty region");
  // log(k) / log(k) in closed form; the sum below can land a few ulps off.
  if (static_cast<int>(counts.size()) == k && counts.front() == counts.back()) return 1.0;
  double h = 0.0;
  for (int c : counts) {
    if (c == 0) continue;
    const double p = c / total;
    h -= p * std::log(p);
  }
  return h > 0.0 ? h / std::log(static_cast<double>(k)) : 0.0;
}

double diversity(const SkyRegion& region, const std::map<std::string, std::string>& cluster_of, int k) {
  std::map<std::string, int> counts;
  for (const auto& m : region.members) {
    const auto it = cluster_of.find(m);
    if (it == cluster_of.end()) throw ValidationError("diversity: member " + m + " has no cluster label");
    ++counts[it->second];
  }
  if (static_cast<int>(counts.size()) > k) {
    throw ValidationError("diversity: region " + region.root_star + " spans more than k clusters");
  }
  std::vector<int> c;
  c.reserve(counts.size());
  for (const auto& [label, n] : counts) c.push_back(n);
  return normalized_entropy(std::move(c), k);
}

}  // namespace linefig
