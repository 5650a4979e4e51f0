#include "linefig/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "linefig/assortativity.hpp"
#include "linefig/clusters.hpp"
#include "linefig/csv.hpp"
#include "linefig/errors.hpp"
#include "linefig/feature_matrix.hpp"
#include "linefig/figure_graph.hpp"
#include "linefig/knn_graph.hpp"
#include "linefig/layout.hpp"
#include "linefig/regions.hpp"
#include "linefig/signature.hpp"
#include "linefig/svg.hpp"
#include "linefig/tsne.hpp"

namespace linefig {

namespace {

constexpr const char* kCatalogCsv = "catalog.csv";
constexpr const char* kCulturesCsv = "cultures.csv";
constexpr const char* kOverridesCsv = "overrides.csv";
constexpr const char* kEdgesCsv = "edges.csv";
constexpr const char* kFeaturesRawCsv = "features_raw.csv";
constexpr const char* kFeaturesCsv = "features.csv";
constexpr const char* kScalingCsv = "scaling.csv";
constexpr const char* kEmbeddingCsv = "embedding.csv";
constexpr const char* kKnnCsv = "knn.csv";
constexpr const char* kClustersCsv = "clusters.csv";
constexpr const char* kDiversityCsv = "diversity.csv";

std::string file_name_safe(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

std::ifstream open_input(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ValidationError("cannot open " + p.string());
  return in;
}

std::map<std::string, std::size_t> key_index(std::span<const std::string> keys) {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < keys.size(); ++i) out.emplace(keys[i], i);
  return out;
}

std::vector<std::string> table_keys(const FeatureTable& t) {
  std::vector<std::string> keys;
  keys.reserve(t.figure_ids.size());
  for (std::size_t i = 0; i < t.figure_ids.size(); ++i) keys.push_back(t.key(i));
  return keys;
}

FeatureTable read_table(const fs::path& dir, const Manifest& m, const std::string& name) {
  std::istringstream in(read_artifact(dir, m, name));
  return read_features_csv(in, name);
}

void write_edges(std::ostream& out, std::span<const LineFigure> figures) {
  out << "culture_id,figure_id,star_a,star_b\n";
  for (const auto& f : figures) {
    for (const auto& e : f.edges) out << f.culture_id << ',' << f.figure_id << ',' << e.a << ',' << e.b << '\n';
  }
}

std::vector<LineFigure> read_edges(std::istream& in, std::string_view source) {
  std::vector<LineFigure> figures;
  std::map<std::string, std::size_t> index;
  csv::LineReader reader(in);
  std::string line;
  bool header = true;
  while (reader.next(line)) {
    const auto where = std::string(source) + ":" + std::to_string(reader.line_number()) + ": ";
    const auto f = csv::split(line);
    if (header) {
      header = false;
      if (line != "culture_id,figure_id,star_a,star_b") throw ValidationError(where + "unexpected header");
      continue;
    }
    if (f.size() != 4) throw ValidationError(where + "expected 4 fields");
    const auto key = f[0] + "/" + f[1];
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, figures.size()).first;
      figures.push_back({f[0], f[1], std::nullopt, {}});
    }
    if (f[2] == f[3]) throw ValidationError(where + "self-loop");
    figures[it->second].edges.emplace_back(f[2], f[3]);
  }
  for (auto& fig : figures) {
    std::sort(fig.edges.begin(), fig.edges.end());
    fig.edges.erase(std::unique(fig.edges.begin(), fig.edges.end()), fig.edges.end());
  }
  return figures;
}

struct KnnArtifact {
  KnnGraph graph;
  std::vector<std::string> keys;
};

KnnArtifact read_knn(const fs::path& dir, const Manifest& knn_manifest) {
  const auto features = require_stage(dir, "features");
  KnnArtifact out;
  out.keys = table_keys(read_table(dir, features, kFeaturesCsv));
  const auto index = key_index(out.keys);
  out.graph.p = knn_manifest.params.at("p").get<int>();
  out.graph.out.assign(out.keys.size(), std::vector<int>(static_cast<std::size_t>(out.graph.p), -1));

  std::istringstream in(read_artifact(dir, knn_manifest, kKnnCsv));
  csv::LineReader reader(in);
  std::string line;
  bool header = true;
  while (reader.next(line)) {
    const auto where = std::string(kKnnCsv) + ":" + std::to_string(reader.line_number()) + ": ";
    if (header) {
      header = false;
      if (line != "source,target,rank") throw ValidationError(where + "unexpected header");
      continue;
    }
    const auto f = csv::split(line);
    if (f.size() != 3) throw ValidationError(where + "expected source,target,rank");
    const auto s = index.find(f[0]);
    const auto t = index.find(f[1]);
    if (s == index.end() || t == index.end()) throw ValidationError(where + "unknown figure key");
    const auto rank = csv::parse_int(f[2], "rank");
    if (rank < 1 || rank > out.graph.p) throw ValidationError(where + "rank out of range");
    out.graph.out[s->second][static_cast<std::size_t>(rank - 1)] = static_cast<int>(t->second);
  }
  for (const auto& targets : out.graph.out) {
    if (std::find(targets.begin(), targets.end(), -1) != targets.end()) {
      throw ValidationError(std::string(kKnnCsv) + ": incomplete neighbour lists");
    }
  }
  return out;
}

std::string format_row(std::string_view name, const AssortativityResult& r) {
  return std::string(name) + "," + csv::format_double(r.r) + "," + csv::format_double(r.sigma_r) + "," +
         csv::format_double(r.r_raw) + "," + csv::format_double(r.r_max) + "\n";
}

}  // namespace

PipelineContext make_context(const fs::path& config_path, const std::optional<fs::path>& out,
                             const std::optional<std::uint64_t>& seed) {
  PipelineContext ctx{load_config(config_path), {}};
  if (out) ctx.config.output = *out;
  if (seed) {
    ctx.config.seed = *seed;
    ctx.config.tsne.seed = *seed;
  }
  ctx.out = ctx.config.output;
  return ctx;
}

std::string_view to_string(Predictor p) {
  switch (p) {
    case Predictor::Culture: return "culture";
    case Predictor::Transmission: return "transmission";
    case Predictor::Use: return "use";
    case Predictor::Ancestry: return "ancestry";
  }
  return "culture";
}

Predictor parse_predictor(std::string_view token) {
  if (token == "culture") return Predictor::Culture;
  if (token == "transmission") return Predictor::Transmission;
  if (token == "use") return Predictor::Use;
  if (token == "ancestry") return Predictor::Ancestry;
  throw ValidationError("unknown predictor: " + std::string(token));
}

std::vector<std::string> predictor_labels(const Dataset& dataset, std::span<const std::string> keys, Predictor p) {
  std::map<std::string, const LineFigure*> figures;
  for (const auto& f : dataset.figures) figures.emplace(f.key(), &f);
  std::vector<std::string> out;
  out.reserve(keys.size());
  for (const auto& key : keys) {
    const auto it = figures.find(key);
    if (it == figures.end()) throw ValidationError("unknown figure " + key);
    const auto& fig = *it->second;
    const auto& culture = dataset.culture(fig.culture_id);
    switch (p) {
      case Predictor::Culture: out.push_back(fig.culture_id); break;
      case Predictor::Transmission: out.emplace_back(to_string(culture.transmission)); break;
      case Predictor::Use: out.emplace_back(to_string(dataset.figure_use(fig))); break;
      case Predictor::Ancestry: {
        const auto a = culture.ancestry == Ancestry::IauGreek ? Ancestry::Mesopotamian : culture.ancestry;
        out.emplace_back(to_string(a));
        break;
      }
    }
  }
  return out;
}

Dataset load_raw_dataset(const PipelineConfig& config, Diagnostics* diagnostics) {
  config.validate();
  Dataset ds;
  {
    auto in = open_input(config.catalog);
    ds.catalog = parse_catalog(in, config.catalog.string());
  }
  {
    auto in = open_input(config.cultures);
    ds.cultures = parse_culture_metadata(in, config.cultures.string());
  }
  if (!config.overrides.empty()) {
    auto in = open_input(config.overrides);
    ds.use_overrides = parse_use_overrides(in, config.overrides.string());
  }
  if (!fs::is_directory(config.skycultures)) {
    throw ValidationError("skycultures is not a directory: " + config.skycultures.string());
  }
  std::vector<std::pair<std::string, fs::path>> sources;
  for (const auto& entry : fs::directory_iterator(config.skycultures)) {
    if (entry.is_regular_file() && entry.path().extension() == ".fab") {
      sources.emplace_back(entry.path().stem().string(), entry.path());
    } else if (entry.is_directory() && fs::exists(entry.path() / "constellationship.fab")) {
      sources.emplace_back(entry.path().filename().string(), entry.path() / "constellationship.fab");
    }
  }
  if (sources.empty()) throw ValidationError("no sky culture files in " + config.skycultures.string());
  std::sort(sources.begin(), sources.end());
  for (const auto& [culture, path] : sources) {
    auto in = open_input(path);
    auto figs = parse_skyculture(in, culture, diagnostics, path.string());
    ds.figures.insert(ds.figures.end(), std::make_move_iterator(figs.begin()), std::make_move_iterator(figs.end()));
  }
  return ds;
}

Dataset load_ingested(const fs::path& dir) {
  const auto m = require_stage(dir, "ingest");
  Dataset ds;
  {
    std::istringstream in(read_artifact(dir, m, kCatalogCsv));
    ds.catalog = parse_catalog(in, kCatalogCsv);
  }
  {
    std::istringstream in(read_artifact(dir, m, kCulturesCsv));
    ds.cultures = parse_culture_metadata(in, kCulturesCsv);
  }
  {
    std::istringstream in(read_artifact(dir, m, kOverridesCsv));
    ds.use_overrides = parse_use_overrides(in, kOverridesCsv);
  }
  {
    std::istringstream in(read_artifact(dir, m, kEdgesCsv));
    ds.figures = read_edges(in, kEdgesCsv);
  }
  ds.validate();
  return ds;
}

Manifest cmd_ingest(const PipelineContext& ctx) {
  const auto& cfg = ctx.config;
  Diagnostics diag;
  Dataset ds = load_raw_dataset(cfg, &diag);

  // Cultures without figures are reported and left out.
  std::map<std::string, int> per_culture;
  for (const auto& f : ds.figures) ++per_culture[f.culture_id];
  std::vector<std::string> excluded;
  std::erase_if(ds.cultures, [&](const CultureRecord& c) {
    if (per_culture.count(c.culture_id)) return false;
    excluded.push_back(c.culture_id);
    diag.warnings.push_back("culture " + c.culture_id + " has metadata but no figures; excluded");
    return true;
  });
  ds.validate();

  std::vector<LineFigure> kept;
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  std::set<std::string> removed_stars;
  for (const auto& f : ds.figures) {
    auto res = prune_faint(f, ds.catalog, cfg.prune_max_mag, cfg.prune_rule);
    removed_stars.insert(res.removed_stars.begin(), res.removed_stars.end());
    if (res.dropped()) {
      dropped.push_back(f.key());
      diag.warnings.push_back("figure " + f.key() + " has no lines left after pruning; dropped");
      ds.use_overrides.erase(f.key());
      continue;
    }
    kept.push_back(std::move(*res.figure));
  }
  ds.figures = std::move(kept);
  per_culture.clear();
  for (const auto& f : ds.figures) ++per_culture[f.culture_id];
  std::erase_if(ds.cultures, [&](const CultureRecord& c) {
    if (per_culture.count(c.culture_id)) return false;
    excluded.push_back(c.culture_id);
    diag.warnings.push_back("culture " + c.culture_id + " lost all figures to pruning; excluded");
    return true;
  });
  ds.validate();
  if (ds.figures.empty()) throw ValidationError("ingest: no figures left");

  ArtifactWriter w(ctx.out, "ingest");
  {
    std::ostringstream os;
    write_catalog(os, ds.catalog);
    w.add(kCatalogCsv, os.str());
  }
  {
    std::ostringstream os;
    write_culture_metadata(os, ds.cultures);
    w.add(kCulturesCsv, os.str());
  }
  {
    std::ostringstream os;
    os << "figure_id,use\n";
    for (const auto& [key, use] : ds.use_overrides) os << key << ',' << to_string(use) << '\n';
    w.add(kOverridesCsv, os.str());
  }
  {
    std::ostringstream os;
    write_edges(os, ds.figures);
    w.add(kEdgesCsv, os.str());
  }
  w.input("catalog", content_hash(read_file(cfg.catalog)));
  w.input("cultures", content_hash(read_file(cfg.cultures)));
  if (!cfg.overrides.empty()) w.input("overrides", content_hash(read_file(cfg.overrides)));
  w.params()["prune_max_mag"] = cfg.prune_max_mag;
  w.params()["prune_rule"] = cfg.prune_rule == ReconnectRule::Chain ? "chain" : "star-to-nearest";
  auto& r = w.report();
  r["cultures"] = ds.cultures.size();
  r["figures"] = ds.figures.size();
  r["figures_per_culture"] = per_culture;
  r["dropped_figures"] = dropped;
  r["excluded_cultures"] = excluded;
  r["removed_stars"] = removed_stars.size();
  r["warnings"] = diag.warnings;
  return w.commit();
}

Manifest cmd_features(const PipelineContext& ctx) {
  const auto ingest = require_stage(ctx.out, "ingest");
  const auto ds = load_ingested(ctx.out);
  SignatureOptions opts;
  opts.cycle_basis = ctx.config.cycle_basis;
  const auto fm = build_feature_matrix(ds, opts);

  ArtifactWriter w(ctx.out, "features");
  std::ostringstream raw, standardized, scaling;
  write_features_csv(raw, fm, false);
  write_features_csv(standardized, fm, true);
  write_scaling_csv(scaling, fm.scaling);
  w.add(kFeaturesRawCsv, raw.str());
  w.add(kFeaturesCsv, standardized.str());
  w.add(kScalingCsv, scaling.str());
  w.input(kEdgesCsv, ingest.outputs.at(kEdgesCsv));
  w.input(kCatalogCsv, ingest.outputs.at(kCatalogCsv));
  w.params()["cycle_basis"] = opts.cycle_basis == CycleBasisKind::Minimum ? "minimum" : "fundamental";
  w.report()["rows"] = fm.rows();
  return w.commit();
}

Manifest cmd_embed(const PipelineContext& ctx) {
  const auto features = require_stage(ctx.out, "features");
  const auto table = read_table(ctx.out, features, kFeaturesCsv);
  const auto n = table.values.rows();
  auto params = ctx.config.tsne;
  params.seed = ctx.config.seed;
  const auto emb = tsne(table.values, params);

  int k = ctx.config.trust_k > 0 ? ctx.config.trust_k : static_cast<int>(std::lround(params.perplexity));
  k = std::max(1, std::min<int>(k, static_cast<int>((n - 1) / 2)));
  const double trust = trustworthiness(table.values, emb.coords, k);

  std::ostringstream os;
  os << "culture_id,figure_id,x,y\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    os << table.culture_ids[i] << ',' << table.figure_ids[i] << ',' << csv::format_double(emb.coords(i, 0)) << ','
       << csv::format_double(emb.coords(i, 1)) << '\n';
  }
  ArtifactWriter w(ctx.out, "embed");
  w.add(kEmbeddingCsv, os.str());
  w.input(kFeaturesCsv, features.outputs.at(kFeaturesCsv));
  auto& p = w.params();
  p["perplexity"] = params.perplexity;
  p["learning_rate"] = params.learning_rate;
  p["iterations"] = params.iterations;
  p["restarts"] = params.restarts;
  p["early_exaggeration"] = params.early_exaggeration;
  p["exaggeration_iterations"] = params.exaggeration_iterations;
  p["seed"] = params.seed;
  auto& r = w.report();
  r["kl_final"] = emb.kl_final;
  r["seed_used"] = emb.seed_used;
  nlohmann::ordered_json restarts = nlohmann::ordered_json::array();
  for (const auto& rr : emb.restarts) {
    nlohmann::ordered_json j;
    j["seed"] = rr.seed;
    if (rr.failed) {
      j["failed"] = rr.message;
    } else {
      j["kl"] = rr.kl;
    }
    restarts.push_back(j);
  }
  r["restarts"] = restarts;
  r["unconverged_perplexity_rows"] = emb.unconverged_rows;
  r["trustworthiness_k"] = k;
  r["trustworthiness"] = trust;
  return w.commit();
}

Manifest cmd_knn(const PipelineContext& ctx) {
  const auto ingest = require_stage(ctx.out, "ingest");
  const auto features = require_stage(ctx.out, "features");
  const auto table = read_table(ctx.out, features, kFeaturesCsv);
  const auto keys = table_keys(table);
  const auto cultures = ingest.report.at("cultures").get<std::size_t>();
  const int p = ctx.config.knn_p ? *ctx.config.knn_p : default_outdegree(keys.size(), cultures);
  const auto g = knn_graph(table.values, p);

  std::ostringstream os;
  os << "source,target,rank\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t r = 0; r < g.out[i].size(); ++r) os << keys[i] << ',' << keys[g.out[i][r]] << ',' << r + 1 << '\n';
  }
  ArtifactWriter w(ctx.out, "knn");
  w.add(kKnnCsv, os.str());
  w.input(kFeaturesCsv, features.outputs.at(kFeaturesCsv));
  w.params()["p"] = p;
  w.params()["p_source"] = ctx.config.knn_p ? "config" : "auto";
  w.report()["nodes"] = g.size();
  w.report()["edges"] = g.edge_count();
  return w.commit();
}

Manifest cmd_assort(const PipelineContext& ctx, Predictor predictor) {
  const auto knn_m = require_stage(ctx.out, "knn");
  const auto ds = load_ingested(ctx.out);
  const auto knn = read_knn(ctx.out, knn_m);
  const auto labels = make_labeling(predictor_labels(ds, knn.keys, predictor));
  const auto name = std::string(to_string(predictor));

  std::string out = "predictor,r,sigma_r,r_raw,r_max\n";
  out += format_row(name, assortativity(knn.graph, labels));
  nlohmann::ordered_json skipped = nlohmann::ordered_json::object();
  for (const auto& cls : labels.names) {
    try {
      out += format_row(name + ":" + cls, one_vs_others(knn.graph, labels, cls));
    } catch (const std::runtime_error& e) {
      skipped[cls] = e.what();
    }
  }
  const auto file = "assort_" + name + ".csv";
  ArtifactWriter w(ctx.out, "assort_" + name);
  w.add(file, out);
  w.input(kKnnCsv, knn_m.outputs.at(kKnnCsv));
  w.params()["predictor"] = name;
  w.params()["p"] = knn.graph.p;
  w.report()["classes"] = labels.class_count();
  w.report()["skipped_one_vs_others"] = skipped;
  return w.commit();
}

Manifest cmd_similarity(const PipelineContext& ctx, Predictor predictor) {
  const auto knn_m = require_stage(ctx.out, "knn");
  const auto ds = load_ingested(ctx.out);
  const auto knn = read_knn(ctx.out, knn_m);
  const auto labels = make_labeling(predictor_labels(ds, knn.keys, predictor));
  const auto deltas = similarity_matrix(knn.graph, labels, ctx.config.delta_mode);
  const auto graph = similarity_graph(deltas, labels, ctx.config.similarity_threshold);
  const auto sizes = labels.class_sizes();
  const auto name = std::string(to_string(predictor));

  std::ostringstream os;
  os << "label,size";
  for (const auto& n : labels.names) os << ',' << n;
  os << '\n';
  for (std::size_t i = 0; i < labels.class_count(); ++i) {
    os << labels.names[i] << ',' << sizes[i];
    for (std::size_t j = 0; j < labels.class_count(); ++j) os << ',' << csv::format_double(deltas(i, j));
    os << '\n';
  }
  ArtifactWriter w(ctx.out, "similarity_" + name);
  w.add("similarity_" + name + ".csv", os.str());
  w.add("similarity_" + name + ".dot", to_dot(graph));
  w.input(kKnnCsv, knn_m.outputs.at(kKnnCsv));
  w.params()["predictor"] = name;
  w.params()["threshold"] = ctx.config.similarity_threshold;
  w.params()["mode"] = ctx.config.delta_mode == DeltaMode::Raw ? "raw" : "normalized";
  w.report()["edges"] = graph.edges.size();
  return w.commit();
}

Manifest cmd_diversity(const PipelineContext& ctx) {
  const auto features = require_stage(ctx.out, "features");
  const auto ds = load_ingested(ctx.out);
  const auto raw = read_table(ctx.out, features, kFeaturesRawCsv);
  const auto keys = table_keys(raw);
  const auto& cfg = ctx.config;

  ClusterAssignment clusters;
  clusters.source = cfg.cluster_source;
  switch (cfg.cluster_source) {
    case ClusterSource::External: {
      auto in = open_input(cfg.cluster_labels);
      clusters = load_labels(in, keys, cfg.cluster_labels.string());
      break;
    }
    case ClusterSource::Rules: {
      std::map<std::string, const LineFigure*> figs;
      for (const auto& f : ds.figures) figs.emplace(f.key(), &f);
      for (std::size_t i = 0; i < keys.size(); ++i) {
        std::array<double, kFeatureCount> values{};
        for (std::size_t c = 0; c < kFeatureCount; ++c) values[c] = raw.values(static_cast<Eigen::Index>(i), c);
        const auto tendrils = tendril_count(FigureGraph::from_figure(*figs.at(keys[i])));
        clusters.labels[keys[i]] = classify_rules(Signature::from_array(values), tendrils, cfg.rules);
      }
      clusters.k = 7;
      break;
    }
    case ClusterSource::Kmeans: {
      const auto standardized = read_table(ctx.out, features, kFeaturesCsv);
      const auto res = kmeans(standardized.values, cfg.kmeans_k, cfg.seed);
      for (std::size_t i = 0; i < keys.size(); ++i) clusters.labels[keys[i]] = std::to_string(res.labels[i]);
      clusters.k = cfg.kmeans_k;
      break;
    }
  }

  const auto regions = root_star_regions(ds.figures, cfg.region_min_count);
  std::ostringstream os;
  os << "root_star,member_count,H\n";
  double sum = 0.0;
  for (const auto& region : regions) {
    const double h = diversity(region, clusters.labels, clusters.k);
    sum += h;
    os << region.root_star << ',' << region.members.size() << ',' << csv::format_double(h) << '\n';
  }
  std::ostringstream labels;
  write_labels(labels, clusters);

  ArtifactWriter w(ctx.out, "diversity");
  w.add(kClustersCsv, labels.str());
  w.add(kDiversityCsv, os.str());
  w.input(kFeaturesRawCsv, features.outputs.at(kFeaturesRawCsv));
  if (cfg.cluster_source == ClusterSource::External) w.input("labels", content_hash(read_file(cfg.cluster_labels)));
  w.params()["cluster_source"] = to_string(cfg.cluster_source);
  w.params()["k"] = clusters.k;
  w.params()["min_count"] = cfg.region_min_count;
  std::map<std::string, int> shares;
  for (const auto& [key, label] : clusters.labels) ++shares[label];
  w.report()["cluster_sizes"] = shares;
  w.report()["regions"] = regions.size();
  w.report()["mean_H"] = regions.empty() ? 0.0 : sum / static_cast<double>(regions.size());
  return w.commit();
}

// ---------------------------------------------------------------- plots

namespace {

constexpr double kPlotSize = 800.0;
constexpr double kMargin = 40.0;

struct Scatter {
  std::vector<std::string> keys;
  std::vector<Point2> px;  // SVG coordinates
};

Scatter load_scatter(const fs::path& dir, const Manifest& embed) {
  std::istringstream in(read_artifact(dir, embed, kEmbeddingCsv));
  csv::LineReader reader(in);
  std::string line;
  Scatter s;
  std::vector<Point2> raw;
  bool header = true;
  while (reader.next(line)) {
    if (header) {
      header = false;
      continue;
    }
    const auto f = csv::split(line);
    if (f.size() != 4) throw ValidationError(std::string(kEmbeddingCsv) + ": expected 4 fields");
    s.keys.push_back(f[0] + "/" + f[1]);
    raw.push_back({csv::parse_double(f[2], "x"), csv::parse_double(f[3], "y")});
  }
  if (raw.empty()) throw ValidationError(std::string(kEmbeddingCsv) + ": empty");
  double min_x = raw[0].x, max_x = raw[0].x, min_y = raw[0].y, max_y = raw[0].y;
  for (const auto& p : raw) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double inner = kPlotSize - 2 * kMargin;
  for (const auto& p : raw) {
    s.px.push_back({kMargin + (p.x - min_x) / span * inner, kPlotSize - kMargin - (p.y - min_y) / span * inner});
  }
  return s;
}

std::string plot_embedding(const fs::path& dir, const Manifest& embed, const std::string& feature,
                           ArtifactWriter& w) {
  const auto s = load_scatter(dir, embed);
  SvgDocument svg(kPlotSize, kPlotSize);
  svg.rect(0, 0, kPlotSize, kPlotSize, "white");
  if (feature.empty()) {
    for (std::size_t i = 0; i < s.keys.size(); ++i) svg.circle(s.px[i].x, s.px[i].y, 3.0, "#4c72b0", 0.7, s.keys[i]);
    svg.text(kMargin, 24, "t-SNE embedding");
    return svg.str();
  }
  const auto features = require_stage(dir, "features");
  const auto table = read_table(dir, features, kFeaturesRawCsv);
  const auto& names = feature_names();
  const auto col = std::find(names.begin(), names.end(), feature) - names.begin();
  if (col == static_cast<long>(names.size())) throw ValidationError("unknown feature " + feature);
  w.input(kFeaturesRawCsv, features.outputs.at(kFeaturesRawCsv));
  const auto index = key_index(table_keys(table));
  std::vector<double> v(s.keys.size());
  for (std::size_t i = 0; i < s.keys.size(); ++i) {
    const auto it = index.find(s.keys[i]);
    if (it == index.end()) throw ValidationError("embedding row " + s.keys[i] + " has no features");
    v[i] = table.values(static_cast<Eigen::Index>(it->second), col);
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;
  for (std::size_t i = 0; i < s.keys.size(); ++i) {
    const double t = range > 0 ? (v[i] - *lo) / range : 0.0;
    svg.circle(s.px[i].x, s.px[i].y, 3.0, gradient_color(t), 0.85, s.keys[i] + " " + csv::format_double(v[i]));
  }
  svg.text(kMargin, 24, "t-SNE embedding, gradient " + feature + " (" + csv::format_double(*lo) + " to " +
                             csv::format_double(*hi) + ")");
  return svg.str();
}

std::string plot_overlay(const fs::path& dir, const Manifest& embed, Predictor predictor, const std::string& focus) {
  const auto s = load_scatter(dir, embed);
  const auto ds = load_ingested(dir);
  const auto labels = predictor_labels(ds, s.keys, predictor);
  if (std::find(labels.begin(), labels.end(), focus) == labels.end()) {
    throw ValidationError("focus '" + focus + "' is not a " + std::string(to_string(predictor)) + " label");
  }
  SvgDocument svg(kPlotSize, kPlotSize);
  svg.rect(0, 0, kPlotSize, kPlotSize, "white");
  for (std::size_t i = 0; i < s.keys.size(); ++i) {
    if (labels[i] != focus) svg.circle(s.px[i].x, s.px[i].y, 2.5, "#b0b0b0", 0.5, s.keys[i]);
  }
  for (std::size_t i = 0; i < s.keys.size(); ++i) {
    if (labels[i] == focus) svg.circle(s.px[i].x, s.px[i].y, 4.0, "#d62728", 1.0, s.keys[i]);
  }
  svg.text(kMargin, 24, std::string(to_string(predictor)) + " = " + focus);
  return svg.str();
}

std::string plot_similarity(const fs::path& dir, const Manifest& sim, const std::string& file, double threshold,
                            std::uint64_t seed) {
  std::istringstream in(read_artifact(dir, sim, file));
  csv::LineReader reader(in);
  std::string line;
  std::vector<std::string> names;
  std::vector<int> sizes;
  std::vector<std::vector<double>> delta;
  bool header = true;
  while (reader.next(line)) {
    const auto f = csv::split(line);
    if (header) {
      header = false;
      continue;
    }
    if (f.size() < 2) throw ValidationError(file + ": malformed row");
    names.push_back(f[0]);
    sizes.push_back(static_cast<int>(csv::parse_int(f[1], "size")));
    std::vector<double> row;
    for (std::size_t j = 2; j < f.size(); ++j) row.push_back(csv::parse_double(f[j], "delta"));
    delta.push_back(std::move(row));
  }
  std::vector<WeightedLink> links;
  double max_w = 0.0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (delta[i].size() != names.size()) throw ValidationError(file + ": matrix is not square");
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      if (delta[i][j] > threshold) {
        links.push_back({static_cast<int>(i), static_cast<int>(j), delta[i][j]});
        max_w = std::max(max_w, delta[i][j]);
      }
    }
  }
  const auto pos = force_layout(static_cast<int>(names.size()), links, seed, 500);
  const double inner = kPlotSize - 2 * kMargin - 80;
  const auto at = [&](std::size_t i) {
    return Point2{kMargin + 40 + pos[i].x * inner, kMargin + 40 + pos[i].y * inner};
  };
  SvgDocument svg(kPlotSize, kPlotSize);
  svg.rect(0, 0, kPlotSize, kPlotSize, "white");
  for (const auto& l : links) {
    const auto a = at(l.a);
    const auto b = at(l.b);
    svg.line(a.x, a.y, b.x, b.y, "#555555", 1.0 + 6.0 * l.weight / max_w, 0.7);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto p = at(i);
    svg.circle(p.x, p.y, 4.0 + std::sqrt(static_cast<double>(sizes[i])), categorical_color(i), 0.9,
               names[i] + " (" + std::to_string(sizes[i]) + ")");
    svg.text(p.x, p.y - 8.0 - std::sqrt(static_cast<double>(sizes[i])), names[i], 11.0, "middle");
  }
  return svg.str();
}

std::string plot_diversity(const fs::path& dir, const Manifest& div) {
  std::istringstream in(read_artifact(dir, div, kDiversityCsv));
  csv::LineReader reader(in);
  std::string line;
  std::vector<std::pair<std::string, double>> rows;
  bool header = true;
  while (reader.next(line)) {
    if (header) {
      header = false;
      continue;
    }
    const auto f = csv::split(line);
    if (f.size() != 3) throw ValidationError(std::string(kDiversityCsv) + ": expected 3 fields");
    rows.emplace_back(f[0] + " (" + f[1] + ")", csv::parse_double(f[2], "H"));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  const double bar_h = 14.0;
  const double height = 2 * kMargin + bar_h * static_cast<double>(std::max<std::size_t>(rows.size(), 1));
  const double label_w = 160.0;
  const double bar_w = kPlotSize - label_w - 2 * kMargin;
  SvgDocument svg(kPlotSize, height);
  svg.rect(0, 0, kPlotSize, height, "white");
  svg.text(kMargin, 24, "Normalized Shannon diversity per root star");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double y = kMargin + bar_h * static_cast<double>(i);
    svg.text(kMargin + label_w - 6, y + bar_h - 3, rows[i].first, 10.0, "end");
    svg.rect(kMargin + label_w, y + 1, bar_w * rows[i].second, bar_h - 2, gradient_color(rows[i].second));
  }
  return svg.str();
}

std::string plot_figure(const Dataset& ds, const std::string& key) {
  const auto it = std::find_if(ds.figures.begin(), ds.figures.end(), [&](const LineFigure& f) { return f.key() == key; });
  if (it == ds.figures.end()) throw ValidationError("unknown figure " + key);
  const auto stars = it->stars();
  UnitVector centre{0, 0, 0};
  for (const auto& s : stars) centre = centre + ds.catalog.position(s);
  centre = normalized(centre);
  // Gnomonic projection onto the tangent plane at the centroid.
  const UnitVector pole{0, 0, 1};
  UnitVector east = cross(pole, centre);
  if (norm(east) < 1e-9) east = UnitVector{1, 0, 0};
  east = normalized(east);
  const UnitVector north = cross(centre, east);
  std::map<std::string, Point2> plane;
  double extent = 1e-9;
  for (const auto& s : stars) {
    const auto v = ds.catalog.position(s);
    const double d = dot(v, centre);
    if (d <= 0.0) throw ValidationError("figure " + key + " spans more than a hemisphere");
    const Point2 p{-dot(v, east) / d, dot(v, north) / d};  // east to the left, as seen on the sky
    extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    plane[s] = p;
  }
  const double size = 300.0;
  const double m = 20.0;
  const auto to_px = [&](const Point2& p) {
    return Point2{size / 2 + p.x / extent * (size / 2 - m), size / 2 - p.y / extent * (size / 2 - m)};
  };
  SvgDocument svg(size, size);
  svg.rect(0, 0, size, size, "#0b1021");
  for (const auto& e : it->edges) {
    const auto a = to_px(plane[e.a]);
    const auto b = to_px(plane[e.b]);
    svg.line(a.x, a.y, b.x, b.y, "#8fb3ff", 1.5);
  }
  for (const auto& s : stars) {
    const auto p = to_px(plane[s]);
    svg.circle(p.x, p.y, std::max(1.5, 5.0 - 0.6 * ds.catalog.at(s).mag), "white", 1.0, s);
  }
  svg.text(6, size - 6, key, 10.0);
  return svg.str();
}

}  // namespace

Manifest cmd_plot(const PipelineContext& ctx, const PlotRequest& req) {
  if (req.kind == "embedding") {
    const auto embed = require_stage(ctx.out, "embed");
    const std::string stem = req.feature.empty() ? "plot_embedding" : "plot_embedding_" + file_name_safe(req.feature);
    ArtifactWriter w(ctx.out, stem);
    w.input(kEmbeddingCsv, embed.outputs.at(kEmbeddingCsv));
    w.add(stem + ".svg", plot_embedding(ctx.out, embed, req.feature, w));
    return w.commit();
  }
  if (req.kind == "overlay") {
    if (req.focus.empty()) throw ValidationError("overlay plot needs a focus class");
    const auto embed = require_stage(ctx.out, "embed");
    const auto stem = "plot_overlay_" + std::string(to_string(req.predictor)) + "_" + file_name_safe(req.focus);
    ArtifactWriter w(ctx.out, stem);
    w.input(kEmbeddingCsv, embed.outputs.at(kEmbeddingCsv));
    w.add(stem + ".svg", plot_overlay(ctx.out, embed, req.predictor, req.focus));
    return w.commit();
  }
  if (req.kind == "similarity") {
    const auto name = std::string(to_string(req.predictor));
    const auto sim = require_stage(ctx.out, "similarity_" + name);
    const auto stem = "plot_similarity_" + name;
    ArtifactWriter w(ctx.out, stem);
    const auto file = "similarity_" + name + ".csv";
    w.input(file, sim.outputs.at(file));
    w.params()["threshold"] = ctx.config.similarity_threshold;
    w.params()["layout_seed"] = ctx.config.seed;
    w.add(stem + ".svg", plot_similarity(ctx.out, sim, file, ctx.config.similarity_threshold, ctx.config.seed));
    return w.commit();
  }
  if (req.kind == "diversity") {
    const auto div = require_stage(ctx.out, "diversity");
    ArtifactWriter w(ctx.out, "plot_diversity");
    w.input(kDiversityCsv, div.outputs.at(kDiversityCsv));
    w.add("plot_diversity.svg", plot_diversity(ctx.out, div));
    return w.commit();
  }
  if (req.kind == "figure") {
    if (req.figure.empty()) throw ValidationError("figure plot needs a figure key");
    const auto ds = load_ingested(ctx.out);
    const auto key = ds.resolve_figure_key(req.figure);
    const auto stem = "figure_" + file_name_safe(key);
    ArtifactWriter w(ctx.out, stem);
    w.add(stem + ".svg", plot_figure(ds, key));
    return w.commit();
  }
  throw ValidationError("unknown plot kind: " + req.kind);
}

}  // namespace linefig
