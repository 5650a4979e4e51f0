#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linefig/skyculture.hpp"

namespace linefig {

using Edge = std::pair<int, int>;  // node indices, first < second

/// Simple undirected graph over the stars of one line figure. Nodes are the
/// stars incident to at least one edge, indexed in ascending id order.
class FigureGraph {
 public:
  FigureGraph() = default;
  /// Abstract graph on nodes 0..n-1. Throws ValidationError on self-loops,
  /// duplicate edges or out-of-range indices.
  FigureGraph(int node_count, std::vector<Edge> edges);

  static FigureGraph from_figure(const LineFigure& figure);

  [[nodiscard]] int node_count() const { return static_cast<int>(adjacency_.size()); }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::span<const int> neighbors(int node) const { return adjacency_[node]; }
  [[nodiscard]] int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  [[nodiscard]] bool has_edge(int u, int v) const;
  /// Star ids; empty for abstract graphs.
  [[nodiscard]] const std::vector<std::string>& node_ids() const { return node_ids_; }

 private:
  std::vector<std::vector<int>> adjacency_;  // sorted neighbour lists
  std::vector<Edge> edges_;                  // sorted
  std::vector<std::string> node_ids_;
};

}  // namespace linefig
