// linefig: command-line pipeline over constellation line figures.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "linefig/errors.hpp"
#include "linefig/pipeline.hpp"

namespace {

void print_summary(const linefig::Manifest& m) {
  std::cout << m.stage << ":";
  for (const auto& [name, hash] : m.outputs) std::cout << ' ' << name;
  std::cout << '\n';
  if (!m.report.empty()) std::cout << m.report.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visual signatures of constellation line figures"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::int64_t> seed;
  app.add_option("--config", config_path, "Pipeline config file (key = value)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Artifact directory (overrides config 'output')");
  app.add_option("--seed", seed, "Random seed (overrides config 'seed')")->check(CLI::NonNegativeNumber);

  auto* ingest = app.add_subcommand("ingest", "Load, validate and prune the input dataset");
  auto* features = app.add_subcommand("features", "Compute the 19 signature features per figure");
  auto* embed = app.add_subcommand("embed", "t-SNE embedding of the standardized features");
  auto* knn = app.add_subcommand("knn", "Directed nearest-neighbour graph in feature space");

  std::string predictor = "culture";
  auto* assort = app.add_subcommand("assort", "Assortativity of a predictor over the kNN graph");
  assort->add_option("--predictor", predictor, "culture | transmission | use | ancestry")->capture_default_str();
  auto* similarity = app.add_subcommand("similarity", "Pairwise similarity between predictor classes");
  similarity->add_option("--predictor", predictor, "culture | transmission | use | ancestry")->capture_default_str();

  auto* diversity = app.add_subcommand("diversity", "Cluster labels and per-root-star diversity");

  linefig::PlotRequest plot_req;
  std::string plot_predictor = "culture";
  auto* plot = app.add_subcommand("plot", "Render an SVG figure from existing artifacts");
  plot->add_option("--kind", plot_req.kind, "embedding | overlay | similarity | diversity | figure")->required();
  plot->add_option("--feature", plot_req.feature, "embedding: colour by feature (s1..s19)");
  plot->add_option("--predictor", plot_predictor, "overlay/similarity predictor")->capture_default_str();
  plot->add_option("--focus", plot_req.focus, "overlay: class drawn in the foreground");
  plot->add_option("--figure", plot_req.figure, "figure: key culture/figure_id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    std::optional<std::filesystem::path> out;
    if (out_dir) out = *out_dir;
    std::optional<std::uint64_t> s;
    if (seed) s = static_cast<std::uint64_t>(*seed);
    const auto ctx = linefig::make_context(config_path, out, s);

    if (*ingest) print_summary(linefig::cmd_ingest(ctx));
    else if (*features) print_summary(linefig::cmd_features(ctx));
    else if (*embed) print_summary(linefig::cmd_embed(ctx));
    else if (*knn) print_summary(linefig::cmd_knn(ctx));
    else if (*assort) print_summary(linefig::cmd_assort(ctx, linefig::parse_predictor(predictor)));
    else if (*similarity) print_summary(linefig::cmd_similarity(ctx, linefig::parse_predictor(predictor)));
    else if (*diversity) print_summary(linefig::cmd_diversity(ctx));
    else if (*plot) {
      plot_req.predictor = linefig::parse_predictor(plot_predictor);
      print_summary(linefig::cmd_plot(ctx, plot_req));
    }
  } catch (const linefig::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const linefig::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
