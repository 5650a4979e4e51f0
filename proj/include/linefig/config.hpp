#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "linefig/assortativity.hpp"
#include "linefig/clusters.hpp"
#include "linefig/graph_algorithms.hpp"
#include "linefig/skyculture.hpp"
#include "linefig/tsne.hpp"

namespace linefig {

struct PipelineConfig {
  // inputs; relative paths are resolved against the config file's directory
  std::filesystem::path catalog;
  std::filesystem::path skycultures;
  std::filesystem::path cultures;
  std::filesystem::path overrides;  // optional
  std::filesystem::path output = "out";

  double prune_max_mag = 7.0;
  ReconnectRule prune_rule = ReconnectRule::Chain;
  CycleBasisKind cycle_basis = CycleBasisKind::Fundamental;

  TsneParams tsne;
  int trust_k = 0;  // 0: round(perplexity), capped below n/2

  std::optional<int> knn_p;  // empty: round(figures / cultures)
  double similarity_threshold = 0.0;
  DeltaMode delta_mode = DeltaMode::Normalized;

  int region_min_count = 20;
  ClusterSource cluster_source = ClusterSource::Rules;
  std::filesystem::path cluster_labels;  // required for external labels
  int kmeans_k = 7;
  RuleThresholds rules;

  std::uint64_t seed = 0;

  /// Checks ranges and that every referenced input path exists.
  void validate() const;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed values raise ValidationError with the line number.
PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                            std::string_view source = "config");
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace linefig
