#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "linefig/errors.hpp"
#include "linefig/figure_graph.hpp"
#include "linefig/graph_algorithms.hpp"
#include "linefig/skyculture.hpp"

using namespace linefig;

namespace {

std::vector<LineFigure> parse(const std::string& text, Diagnostics* diag = nullptr) {
  std::istringstream in(text);
  return parse_skyculture(in, "test", diag);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

StarCatalog catalog_of(std::initializer_list<Star> stars) {
  StarCatalog cat;
  for (const auto& s : stars) cat.add(s);
  return cat;
}

bool has_edge(const LineFigure& f, const std::string& a, const std::string& b) {
  return std::binary_search(f.edges.begin(), f.edges.end(), StarPair(a, b));
}

}  // namespace

TEST_CASE("parse_skyculture examples") {
  const auto figs = parse("CrB 6 a b b c c d d e e f f g\n");
  REQUIRE(figs.size() == 1);
  CHECK(figs[0].culture_id == "test");
  CHECK(figs[0].figure_id == "CrB");
  CHECK(figs[0].edges.size() == 6);
  CHECK(figs[0].stars().size() == 7);
  const auto g = FigureGraph::from_figure(figs[0]);
  CHECK(connected_components(g).count == 1);

  CHECK(error_of("X 1 a a\n").find("self-loop") != std::string::npos);

  Diagnostics diag;
  const auto dup = parse("X 2 a b a b\n", &diag);
  REQUIRE(dup.size() == 1);
  CHECK(dup[0].edges.size() == 1);
  CHECK(diag.warnings.size() == 1);
  // Reversed pairs are the same unordered link.
  CHECK(parse("X 2 a b b a\n")[0].edges.size() == 1);
}

TEST_CASE("parse_skyculture errors") {
  CHECK(error_of("X 2 a b c\n").find("odd number") != std::string::npos);
  CHECK(error_of("X 0\n").find("zero lines") != std::string::npos);
  CHECK(error_of("X\n").find("missing line count") != std::string::npos);
  CHECK(error_of("X 2 a b\n").find("declares") != std::string::npos);
  CHECK(error_of("X 1 a b\nX 1 c d\n").find("duplicate figure id") != std::string::npos);
  CHECK(error_of("# c\nX 1 a a\n").find("skyculture:2") != std::string::npos);
}

TEST_CASE("skyculture parse, write, parse is the identity") {
  const auto figs = parse("B 3 q r r s s q\nA 2 z y y x\n# note\nC 1 m n\n");
  std::ostringstream out;
  write_skyculture(out, figs);
  const auto again = parse(out.str());
  REQUIRE(again.size() == figs.size());
  for (std::size_t i = 0; i < figs.size(); ++i) {
    CHECK(again[i].figure_id == figs[i].figure_id);
    CHECK(again[i].edges == figs[i].edges);
  }
}

TEST_CASE("parse_culture_metadata examples") {
  std::istringstream in("culture_id,transmission,uses,ancestry\nbabylonian,w,re,M\nanutan,o,nv,P\n");
  const auto recs = parse_culture_metadata(in);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].culture_id == "babylonian");
  CHECK(recs[0].transmission == Transmission::Written);
  CHECK(recs[0].uses == std::vector<Use>{Use::Religious});
  CHECK(recs[0].ancestry == Ancestry::Mesopotamian);
  CHECK(recs[1].transmission == Transmission::Oral);
  CHECK(recs[1].uses == std::vector<Use>{Use::Navigation});
  CHECK(recs[1].ancestry == Ancestry::Polynesian);

  std::istringstream bad("x,q,re,M\n");
  try {
    parse_culture_metadata(bad);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("unknown transmission") != std::string::npos);
  }
}

TEST_CASE("culture metadata tokens and round trip") {
  std::istringstream in("a,o,nv;re,nA,note\nb,w,uncategorized,G\nc,o,po;fo,Chinese\n");
  const auto recs = parse_culture_metadata(in);
  CHECK(recs[0].uses == std::vector<Use>{Use::Navigation, Use::Religious});
  CHECK(recs[0].ancestry == Ancestry::NorthAmerican);
  CHECK(recs[0].timestamp_note == "note");
  CHECK(recs[1].uses == std::vector<Use>{Use::Uncategorized});
  CHECK(recs[1].ancestry == Ancestry::IauGreek);
  CHECK(recs[2].ancestry == Ancestry::Chinese);

  std::ostringstream out;
  write_culture_metadata(out, recs);
  std::istringstream back(out.str());
  const auto again = parse_culture_metadata(back);
  REQUIRE(again.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(again[i].culture_id == recs[i].culture_id);
    CHECK(again[i].uses == recs[i].uses);
    CHECK(again[i].ancestry == recs[i].ancestry);
  }

  for (const auto* text : {"a,w,,M\n", "a,w,xx,M\n", "a,w,re,Q\n", "a,w,re;uncategorized,M\n", "a,w,re,M\na,o,re,M\n"}) {
    std::istringstream s(text);
    CHECK_THROWS_AS(parse_culture_metadata(s), ValidationError);
  }
}

TEST_CASE("dataset validation and per-figure use") {
  Dataset ds;
  ds.catalog = catalog_of({{"a", 0, 0, 1}, {"b", 1, 0, 1}, {"c", 2, 0, 1}});
  std::istringstream cultures("w,w,nv;re,G\nb,w,re,M\n");
  ds.cultures = parse_culture_metadata(cultures);
  auto w = parse("One 1 a b\nTwo 1 b c\n");
  for (auto& f : w) f.culture_id = "w";
  auto b = parse("One 1 a c\n");
  b[0].culture_id = "b";
  ds.figures = w;
  ds.figures.push_back(b[0]);
  std::istringstream overrides("figure_id,use\nTwo,navigation\nb/One,political\n");
  ds.use_overrides = parse_use_overrides(overrides);
  ds.validate();
  CHECK(ds.use_overrides.count("w/Two") == 1);
  CHECK(ds.figure_use(ds.figures[0]) == Use::Uncategorized);  // several culture uses, no override
  CHECK(ds.figure_use(ds.figures[1]) == Use::Navigation);
  CHECK(ds.figure_use(ds.figures[2]) == Use::Political);
  CHECK_THROWS_AS((void)ds.resolve_figure_key("One"), ValidationError);  // ambiguous
  CHECK(ds.resolve_figure_key("b/One") == "b/One");

  auto broken = ds;
  broken.figures[0].edges = {StarPair("a", "zz")};
  CHECK_THROWS_AS(broken.validate(), ValidationError);
  broken = ds;
  broken.figures[0].culture_id = "nope";
  CHECK_THROWS_AS(broken.validate(), ValidationError);
  broken = ds;
  broken.use_overrides["w/Missing"] = Use::Folk;
  CHECK_THROWS_AS(broken.validate(), ValidationError);
}

TEST_CASE("prune_faint examples") {
  const auto cat = catalog_of({{"a", 0, 0, 1.0}, {"b", 1, 0, 7.5}, {"c", 2, 0, 2.0}, {"d", 3, 0, 7.0}});
  const auto chain = parse("X 2 a b b c\n")[0];
  const auto r = prune_faint(chain, cat);
  REQUIRE(r.figure);
  CHECK(r.figure->edges == std::vector<StarPair>{StarPair("a", "c")});
  CHECK(r.removed_stars == std::vector<std::string>{"b"});

  const auto bright = parse("Y 2 a c c d\n")[0];  // d has mag exactly 7.0 and stays
  const auto same = prune_faint(bright, cat);
  REQUIRE(same.figure);
  CHECK(same.figure->edges == bright.edges);
  CHECK(same.removed_stars.empty());

  const auto lost = parse("Z 1 a b\n")[0];
  const auto dropped = prune_faint(lost, cat);
  CHECK(dropped.dropped());
}

TEST_CASE("prune_faint degree-3 star reconnects along the shortest chain") {
  // p, q, r on the equator with q between them; the faint hub sits above q.
  const auto cat = catalog_of({{"p", 0, 0, 1.0}, {"q", 4, 0, 1.0}, {"r", 10, 0, 1.0}, {"h", 4, 3, 8.0}});
  const auto fig = parse("S 3 h p h q h r\n")[0];
  const auto res = prune_faint(fig, cat);
  REQUIRE(res.figure);
  CHECK(res.figure->edges.size() == 2);
  CHECK(has_edge(*res.figure, "p", "q"));
  CHECK(has_edge(*res.figure, "q", "r"));

  // Oracle: every ordering of the neighbours as a path; the added chain must
  // reach the minimum total arc length.
  std::vector<std::string> nb = {"p", "q", "r"};
  double best = std::numeric_limits<double>::infinity();
  std::sort(nb.begin(), nb.end());
  do {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < nb.size(); ++i) len += angular_separation(cat.position(nb[i]), cat.position(nb[i + 1]));
    best = std::min(best, len);
  } while (std::next_permutation(nb.begin(), nb.end()));
  double added = 0.0;
  for (const auto& e : res.added_edges) added += angular_separation(cat.position(e.a), cat.position(e.b));
  CHECK(added == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("star-to-nearest reconnection links every neighbour to the closest one") {
  const auto cat = catalog_of({{"p", 0, 0, 1.0}, {"q", 4, 0, 1.0}, {"r", 10, 0, 1.0}, {"h", 4, 3, 8.0}});
  const auto fig = parse("S 3 h p h q h r\n")[0];
  const auto res = prune_faint(fig, cat, 7.0, ReconnectRule::StarToNearest);
  REQUIRE(res.figure);
  CHECK(has_edge(*res.figure, "p", "q"));
  CHECK(has_edge(*res.figure, "q", "r"));
  CHECK_FALSE(has_edge(*res.figure, "p", "r"));
}

TEST_CASE("prune_faint is idempotent and keeps components together") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ra(0.0, 20.0), dec(-10.0, 10.0), mag(0.0, 9.0);
  for (int trial = 0; trial < 200; ++trial) {
    StarCatalog cat;
    const int n = 8;
    for (int i = 0; i < n; ++i) cat.add({"s" + std::to_string(i), ra(rng), dec(rng), mag(rng)});
    // Random connected figure: spanning tree plus extra links.
    LineFigure fig{"c", "f", std::nullopt, {}};
    for (int i = 1; i < n; ++i) {
      std::uniform_int_distribution<int> parent(0, i - 1);
      fig.edges.emplace_back("s" + std::to_string(i), "s" + std::to_string(parent(rng)));
    }
    std::uniform_int_distribution<int> any(0, n - 1);
    for (int k = 0; k < 3; ++k) {
      const int u = any(rng), v = any(rng);
      if (u != v) fig.edges.emplace_back("s" + std::to_string(u), "s" + std::to_string(v));
    }
    std::sort(fig.edges.begin(), fig.edges.end());
    fig.edges.erase(std::unique(fig.edges.begin(), fig.edges.end()), fig.edges.end());

    for (auto rule : {ReconnectRule::Chain, ReconnectRule::StarToNearest}) {
      const auto once = prune_faint(fig, cat, 7.0, rule);
      if (once.dropped()) continue;
      const auto twice = prune_faint(*once.figure, cat, 7.0, rule);
      REQUIRE(twice.figure);
      CHECK(twice.figure->edges == once.figure->edges);
      CHECK(twice.added_edges.empty());
      CHECK(connected_components(FigureGraph::from_figure(*once.figure)).count == 1);
    }
  }
}

TEST_CASE("figure_graph examples") {
  const auto one = FigureGraph::from_figure(parse("X 1 a b\n")[0]);
  CHECK(one.node_count() == 2);
  CHECK(one.edge_count() == 1);
  const auto tri = FigureGraph::from_figure(parse("X 3 a b b c c a\n")[0]);
  CHECK(tri.node_count() == 3);
  CHECK(tri.edge_count() == 3);
  const auto two = FigureGraph::from_figure(parse("X 2 a b c d\n")[0]);
  CHECK(two.node_count() == 4);
  CHECK(two.edge_count() == 2);
  CHECK(connected_components(two).count == 2);
  CHECK(two.node_ids() == std::vector<std::string>{"a", "b", "c", "d"});
  for (int v = 0; v < tri.node_count(); ++v) {
    for (int w : tri.neighbors(v)) CHECK(tri.has_edge(w, v));
  }
  CHECK_THROWS_AS(FigureGraph(2, {{0, 0}}), ValidationError);
  CHECK_THROWS_AS(FigureGraph(2, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(FigureGraph(2, {{0, 2}}), ValidationError);
}
