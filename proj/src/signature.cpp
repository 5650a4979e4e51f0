#include "linefig/signature.hpp"

#include <algorithm>
#include <limits>

#include "linefig/errors.hpp"

namespace linefig {

std::array<double, kFeatureCount> Signature::to_array() const {
  return {static_cast<double>(num_links),
          static_cast<double>(max_degree),
          avg_degree,
          clustering,
          static_cast<double>(max_core),
          static_cast<double>(num_cycles),
          static_cast<double>(largest_cycle),
          static_cast<double>(num_components),
          avg_component_diameter,
          avg_shortest_path,
          static_cast<double>(link_connectivity),
          spatial_diameter,
          avg_link_length,
          sharpest_angle,
          avg_angle,
          static_cast<double>(planar),
          avg_mag,
          min_mag,
          max_mag};
}

Signature Signature::from_array(const std::array<double, kFeatureCount>& v) {
  Signature s;
  s.num_links = static_cast<int>(v[0]);
  s.max_degree = static_cast<int>(v[1]);
  s.avg_degree = v[2];
  s.clustering = v[3];
  s.max_core = static_cast<int>(v[4]);
  s.num_cycles = static_cast<int>(v[5]);
  s.largest_cycle = static_cast<int>(v[6]);
  s.num_components = static_cast<int>(v[7]);
  s.avg_component_diameter = v[8];
  s.avg_shortest_path = v[9];
  s.link_connectivity = static_cast<int>(v[10]);
  s.spatial_diameter = v[11];
  s.avg_link_length = v[12];
  s.sharpest_angle = v[13];
  s.avg_angle = v[14];
  s.planar = static_cast<int>(v[15]);
  s.avg_mag = v[16];
  s.min_mag = v[17];
  s.max_mag = v[18];
  return s;
}

const std::array<std::string_view, kFeatureCount>& feature_names() {
  static constexpr std::array<std::string_view, kFeatureCount> names = {
      "s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "s9", "s10",
      "s11", "s12", "s13", "s14", "s15", "s16", "s17", "s18", "s19"};
  return names;
}

int tendril_count(const FigureGraph& g) {
  int count = 0;
  for (int u = 0; u < g.node_count(); ++u) count += g.degree(u) == 1 ? 1 : 0;
  return count;
}

void compute_structural_features(const FigureGraph& g, Signature& sig, CycleBasisKind basis) {
  const int n = g.node_count();
  const int m = g.edge_count();
  sig.num_links = m;
  sig.max_degree = 0;
  for (int u = 0; u < n; ++u) sig.max_degree = std::max(sig.max_degree, g.degree(u));
  sig.avg_degree = n > 0 ? 2.0 * m / n : 0.0;
  sig.clustering = average_clustering(g);

  const auto cores = core_numbers(g);
  sig.max_core = cores.empty() ? 0 : *std::max_element(cores.begin(), cores.end());

  const auto comps = connected_components(g);
  sig.num_components = comps.count;
  const auto cycles = cycle_basis(g, basis);
  sig.num_cycles = static_cast<int>(cycles.size());
  sig.largest_cycle = 0;
  for (const auto& c : cycles) sig.largest_cycle = std::max(sig.largest_cycle, static_cast<int>(c.size()));

  const auto paths = component_path_statistics(g);
  sig.avg_component_diameter = paths.mean_diameter;
  sig.avg_shortest_path = paths.mean_shortest_path;
  sig.link_connectivity = comps.count == 1 ? edge_connectivity(g) : 0;
}

Signature compute_signature(const LineFigure& figure, const StarCatalog& catalog, const SignatureOptions& options) {
  const auto g = FigureGraph::from_figure(figure);
  Signature sig;
  compute_structural_features(g, sig, options.cycle_basis);

  const int n = g.node_count();
  std::vector<UnitVector> pos(n);
  for (int u = 0; u < n; ++u) pos[u] = catalog.position(g.node_ids()[u]);

  double length_sum = 0.0;
  for (const auto& [u, v] : g.edges()) {
    if (norm(pos[u] - pos[v]) < 1e-12) {
      throw GeometryError("figure " + figure.key() + ": link between coincident stars " + g.node_ids()[u] + " and " +
                          g.node_ids()[v]);
    }
    length_sum += angular_separation(pos[u], pos[v]);
  }
  sig.avg_link_length = length_sum / g.edge_count();

  sig.spatial_diameter = 0.0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) sig.spatial_diameter = std::max(sig.spatial_diameter, angular_separation(pos[u], pos[v]));
  }

  double angle_sum = 0.0;
  long long angle_count = 0;
  double sharpest = std::numeric_limits<double>::infinity();
  for (int u = 0; u < n; ++u) {
    const auto nbs = g.neighbors(u);
    for (std::size_t i = 0; i < nbs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbs.size(); ++j) {
        const double a = vertex_angle(pos[u], pos[nbs[i]], pos[nbs[j]]);
        angle_sum += a;
        sharpest = std::min(sharpest, a);
        ++angle_count;
      }
    }
  }
  if (angle_count > 0) {
    sig.sharpest_angle = sharpest;
    sig.avg_angle = angle_sum / static_cast<double>(angle_count);
  } else {
    sig.sharpest_angle = sig.avg_angle = kNoAngle;
  }

  sig.planar = 1;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size() && sig.planar == 1; ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      if (a == c || a == d || b == c || b == d) continue;
      bool crosses = false;
      try {
        crosses = geodesics_cross(pos[a], pos[b], pos[c], pos[d]);
      } catch (const GeometryError&) {
        crosses = true;  // overlapping collinear links are drawn on top of each other
      }
      if (crosses) {
        sig.planar = 0;
        break;
      }
    }
  }

  double mag_sum = 0.0;
  sig.min_mag = std::numeric_limits<double>::infinity();
  sig.max_mag = -std::numeric_limits<double>::infinity();
  for (const auto& id : g.node_ids()) {
    const double m = catalog.at(id).mag;
    mag_sum += m;
    sig.min_mag = std::min(sig.min_mag, m);
    sig.max_mag = std::max(sig.max_mag, m);
  }
  sig.avg_mag = mag_sum / n;
  return sig;
}

}  // namespace linefig
