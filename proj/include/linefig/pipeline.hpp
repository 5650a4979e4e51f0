#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linefig/artifacts.hpp"
#include "linefig/config.hpp"
#include "linefig/skyculture.hpp"

namespace linefig {

struct PipelineContext {
  PipelineConfig config;
  std::filesystem::path out;  // artifact directory
};

/// Builds a context from a config file and the global CLI overrides.
PipelineContext make_context(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out,
                             const std::optional<std::uint64_t>& seed);

enum class Predictor { Culture, Transmission, Use, Ancestry };

std::string_view to_string(Predictor p);
Predictor parse_predictor(std::string_view token);

/// One label per key. IAU/Greek-descended ancestry is folded into
/// Mesopotamian; use resolves per-figure overrides first.
std::vector<std::string> predictor_labels(const Dataset& dataset, std::span<const std::string> keys, Predictor p);

/// Reads the raw inputs named by the config (catalog, sky culture files,
/// metadata, overrides) without pruning. A skycultures directory may hold
/// `<culture>.fab` files or `<culture>/constellationship.fab` folders.
Dataset load_raw_dataset(const PipelineConfig& config, Diagnostics* diagnostics);

/// Dataset as normalized by the ingest stage.
Dataset load_ingested(const std::filesystem::path& dir);

Manifest cmd_ingest(const PipelineContext& ctx);
Manifest cmd_features(const PipelineContext& ctx);
Manifest cmd_embed(const PipelineContext& ctx);
Manifest cmd_knn(const PipelineContext& ctx);
Manifest cmd_assort(const PipelineContext& ctx, Predictor predictor);
Manifest cmd_similarity(const PipelineContext& ctx, Predictor predictor);
Manifest cmd_diversity(const PipelineContext& ctx);

struct PlotRequest {
  std::string kind;       // embedding | overlay | similarity | diversity | figure
  std::string feature;    // embedding: optional gradient column, e.g. "s17"
  Predictor predictor = Predictor::Culture;
  std::string focus;      // overlay: highlighted class
  std::string figure;     // figure: key culture/figure
};

Manifest cmd_plot(const PipelineContext& ctx, const PlotRequest& request);

}  // namespace linefig
