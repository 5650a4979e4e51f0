#pragma once

#include <array>
#include <string_view>

#include "linefig/figure_graph.hpp"
#include "linefig/graph_algorithms.hpp"
#include "linefig/skyculture.hpp"
#include "linefig/star_catalog.hpp"

namespace linefig {

inline constexpr std::size_t kFeatureCount = 19;

/// Sharpest/average angle reported for figures without any pair of
/// incident links (every star has degree 1).
inline constexpr double kNoAngle = 360.0;

/// The visual signature s1..s19 of one line figure.
struct Signature {
  // network structure
  int num_links = 0;                   // s1
  int max_degree = 0;                  // s2
  double avg_degree = 0.0;             // s3
  double clustering = 0.0;             // s4
  int max_core = 0;                    // s5
  int num_cycles = 0;                  // s6
  int largest_cycle = 0;               // s7, edges; 0 when acyclic
  int num_components = 0;              // s8
  double avg_component_diameter = 0;  // s9, hops
  double avg_shortest_path = 0.0;      // s10, hops
  int link_connectivity = 0;           // s11, 0 when disconnected
  // spatial, degrees
  double spatial_diameter = 0.0;  // s12
  double avg_link_length = 0.0;   // s13
  double sharpest_angle = kNoAngle;  // s14
  double avg_angle = kNoAngle;       // s15
  int planar = 1;                    // s16
  // brightness, magnitudes
  double avg_mag = 0.0;  // s17
  double min_mag = 0.0;  // s18
  double max_mag = 0.0;  // s19

  [[nodiscard]] std::array<double, kFeatureCount> to_array() const;
  static Signature from_array(const std::array<double, kFeatureCount>& values);
};

/// Column names "s1".."s19".
const std::array<std::string_view, kFeatureCount>& feature_names();

struct SignatureOptions {
  CycleBasisKind cycle_basis = CycleBasisKind::Fundamental;
};

/// Fills s1..s11 from graph structure alone.
void compute_structural_features(const FigureGraph& g, Signature& sig,
                                 CycleBasisKind basis = CycleBasisKind::Fundamental);

/// All 19 features. Throws GeometryError for a link between coincident stars.
Signature compute_signature(const LineFigure& figure, const StarCatalog& catalog, const SignatureOptions& options = {});

/// Number of degree-1 nodes ("tendrils").
int tendril_count(const FigureGraph& g);

}  // namespace linefig
