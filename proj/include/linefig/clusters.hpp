#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linefig/matrix.hpp"
#include "linefig/signature.hpp"

namespace linefig {

struct RuleThresholds {
  double large_span_deg = 35.0;  // s12 at or above this counts as spatially large
  double bright_mag = 2.0;       // s17 at or below this counts as very bright
};

/// First matching rule: C1 single link, C4 non-planar, C3 large and bright,
/// C6 triangles without tendrils, C7 longer cycles without tendrils,
/// C5 other cyclic figures, C2 everything else.
std::string classify_rules(const Signature& sig, int tendrils, const RuleThresholds& thresholds = {});

enum class ClusterSource { External, Rules, Kmeans };

std::string_view to_string(ClusterSource s);
ClusterSource parse_cluster_source(std::string_view token);

struct ClusterAssignment {
  std::map<std::string, std::string> labels;  // figure key -> cluster id
  ClusterSource source = ClusterSource::External;
  int k = 0;
};

struct KmeansResult {
  std::vector<int> labels;
  Matrix centroids;
  std::vector<double> objective;  // sum of squared distances after each assignment step
  int iterations = 0;
  bool converged = false;
  int reseeds = 0;
};

/// Lloyd's algorithm with k-means++ seeding; stops when assignments repeat
/// or after `max_iterations`. Deterministic for a given seed.
KmeansResult kmeans(const Matrix& X, int k, std::uint64_t seed, int max_iterations = 300);

/// Reads `figure_id,cluster`. Ids may be full keys or bare figure ids that
/// are unique among `keys`. Every key must be labelled exactly once.
ClusterAssignment load_labels(std::istream& in, std::span<const std::string> keys,
                              std::string_view source = "labels");

void write_labels(std::ostream& out, const ClusterAssignment& assignment);

}  // namespace linefig
