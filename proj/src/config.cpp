#include "linefig/config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "linefig/csv.hpp"
#include "linefig/errors.hpp"

namespace linefig {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

int to_int(const std::string& v, std::string_view key) {
  const auto x = csv::parse_int(v, key);
  if (x < INT32_MIN || x > INT32_MAX) throw ValidationError(std::string(key) + " out of range");
  return static_cast<int>(x);
}

}  // namespace

PipelineConfig parse_config(std::istream& in, const fs::path& base_dir, std::string_view source) {
  PipelineConfig cfg;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"catalog", [&](const std::string& v) { cfg.catalog = resolve(base_dir, v); }},
      {"skycultures", [&](const std::string& v) { cfg.skycultures = resolve(base_dir, v); }},
      {"cultures", [&](const std::string& v) { cfg.cultures = resolve(base_dir, v); }},
      {"overrides", [&](const std::string& v) { cfg.overrides = resolve(base_dir, v); }},
      {"output", [&](const std::string& v) { cfg.output = resolve(base_dir, v); }},
      {"prune.max_mag", [&](const std::string& v) { cfg.prune_max_mag = csv::parse_double(v, "prune.max_mag"); }},
      {"prune.rule",
       [&](const std::string& v) {
         if (v == "chain") cfg.prune_rule = ReconnectRule::Chain;
         else if (v == "star-to-nearest") cfg.prune_rule = ReconnectRule::StarToNearest;
         else throw ValidationError("prune.rule must be chain or star-to-nearest");
       }},
      {"features.cycle_basis",
       [&](const std::string& v) {
         if (v == "fundamental") cfg.cycle_basis = CycleBasisKind::Fundamental;
         else if (v == "minimum") cfg.cycle_basis = CycleBasisKind::Minimum;
         else throw ValidationError("features.cycle_basis must be fundamental or minimum");
       }},
      {"tsne.perplexity", [&](const std::string& v) { cfg.tsne.perplexity = csv::parse_double(v, "tsne.perplexity"); }},
      {"tsne.learning_rate",
       [&](const std::string& v) { cfg.tsne.learning_rate = csv::parse_double(v, "tsne.learning_rate"); }},
      {"tsne.iterations", [&](const std::string& v) { cfg.tsne.iterations = to_int(v, "tsne.iterations"); }},
      {"tsne.restarts", [&](const std::string& v) { cfg.tsne.restarts = to_int(v, "tsne.restarts"); }},
      {"tsne.early_exaggeration",
       [&](const std::string& v) { cfg.tsne.early_exaggeration = csv::parse_double(v, "tsne.early_exaggeration"); }},
      {"tsne.exaggeration_iterations",
       [&](const std::string& v) { cfg.tsne.exaggeration_iterations = to_int(v, "tsne.exaggeration_iterations"); }},
      {"tsne.trust_k", [&](const std::string& v) { cfg.trust_k = to_int(v, "tsne.trust_k"); }},
      {"knn.p",
       [&](const std::string& v) {
         if (v == "auto") cfg.knn_p.reset();
         else cfg.knn_p = to_int(v, "knn.p");
       }},
      {"similarity.threshold",
       [&](const std::string& v) { cfg.similarity_threshold = csv::parse_double(v, "similarity.threshold"); }},
      {"similarity.mode",
       [&](const std::string& v) {
         if (v == "normalized") cfg.delta_mode = DeltaMode::Normalized;
         else if (v == "raw") cfg.delta_mode = DeltaMode::Raw;
         else throw ValidationError("similarity.mode must be normalized or raw");
       }},
      {"regions.min_count", [&](const std::string& v) { cfg.region_min_count = to_int(v, "regions.min_count"); }},
      {"clusters.source", [&](const std::string& v) { cfg.cluster_source = parse_cluster_source(v); }},
      {"clusters.labels", [&](const std::string& v) { cfg.cluster_labels = resolve(base_dir, v); }},
      {"clusters.k", [&](const std::string& v) { cfg.kmeans_k = to_int(v, "clusters.k"); }},
      {"rules.large_span_deg",
       [&](const std::string& v) { cfg.rules.large_span_deg = csv::parse_double(v, "rules.large_span_deg"); }},
      {"rules.bright_mag", [&](const std::string& v) { cfg.rules.bright_mag = csv::parse_double(v, "rules.bright_mag"); }},
      {"seed",
       [&](const std::string& v) {
         const auto s = csv::parse_int(v, "seed");
         if (s < 0) throw ValidationError("seed must be non-negative");
         cfg.seed = static_cast<std::uint64_t>(s);
       }},
  };

  csv::LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const auto where = std::string(source) + ":" + std::to_string(reader.line_number()) + ": ";
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (csv::trim(line).empty()) continue;
      throw ValidationError(where + "expected key = value");
    }
    const std::string key(csv::trim(std::string_view(line).substr(0, eq)));
    const std::string value(csv::trim(std::string_view(line).substr(eq + 1)));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ValidationError(where + "unknown key '" + key + "'");
    if (value.empty()) throw ValidationError(where + "empty value for '" + key + "'");
    try {
      it->second(value);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  cfg.tsne.seed = cfg.seed;
  return cfg;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  return parse_config(in, path.parent_path(), path.string());
}

void PipelineConfig::validate() const {
  const auto need = [](const fs::path& p, std::string_view what) {
    if (p.empty()) throw ValidationError("config: " + std::string(what) + " is not set");
    if (!fs::exists(p)) throw ValidationError("config: " + std::string(what) + " not found: " + p.string());
  };
  need(catalog, "catalog");
  need(skycultures, "skycultures");
  need(cultures, "cultures");
  if (!overrides.empty()) need(overrides, "overrides");
  if (cluster_source == ClusterSource::External) need(cluster_labels, "clusters.labels");
  if (!(prune_max_mag > -30.0 && prune_max_mag < 30.0)) throw ValidationError("config: prune.max_mag out of range");
  if (knn_p && *knn_p < 1) throw ValidationError("config: knn.p must be positive");
  if (!(similarity_threshold >= 0.0)) throw ValidationError("config: similarity.threshold must be >= 0");
  if (region_min_count < 1) throw ValidationError("config: regions.min_count must be >= 1");
  if (kmeans_k < 2) throw ValidationError("config: clusters.k must be >= 2");
  if (trust_k < 0) throw ValidationError("config: tsne.trust_k must be >= 0");
  if (tsne.perplexity <= 0.0 || tsne.learning_rate <= 0.0 || tsne.iterations < 1 || tsne.restarts < 1 ||
      tsne.early_exaggeration < 1.0 || tsne.exaggeration_iterations < 0) {
    throw ValidationError("config: t-SNE parameters out of range");
  }
}

}  // namespace linefig
