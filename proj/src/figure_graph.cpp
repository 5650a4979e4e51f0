#include "linefig/figure_graph.hpp"

#include <algorithm>

#include "linefig/errors.hpp"

namespace linefig {

FigureGraph::FigureGraph(int node_count, std::vector<Edge> edges) : adjacency_(node_count), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= node_count) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop edge");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw ValidationError("duplicate edge");
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbs : adjacency_) std::sort(nbs.begin(), nbs.end());
}

FigureGraph FigureGraph::from_figure(const LineFigure& figure) {
  auto ids = figure.stars();
  const auto index = [&](const std::string& id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(figure.edges.size());
  for (const auto& e : figure.edges) edges.emplace_back(index(e.a), index(e.b));
  FigureGraph g(static_cast<int>(ids.size()), std::move(edges));
  g.node_ids_ = std::move(ids);
  return g;
}

bool FigureGraph::has_edge(int u, int v) const {
  const auto& nbs = adjacency_[u];
  return std::binary_search(nbs.begin(), nbs.end(), v);
}

}  // namespace linefig
