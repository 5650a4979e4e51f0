#pragma once

#include <vector>

#include "linefig/figure_graph.hpp"

namespace linefig {

struct Components {
  std::vector<int> label;  // component index per node, numbered by lowest node
  int count = 0;
};

Components connected_components(const FigureGraph& g);

/// Hop distances from `source`; -1 for unreachable nodes.
std::vector<int> bfs_distances(const FigureGraph& g, int source);

/// Core number of every node (Batagelj-Zaversnik peeling).
std::vector<int> core_numbers(const FigureGraph& g);

/// Mean of the local clustering coefficients over all nodes; nodes of
/// degree < 2 contribute 0.
double average_clustering(const FigureGraph& g);

struct PathStatistics {
  double mean_diameter = 0.0;       // hops, averaged over components
  double mean_shortest_path = 0.0;  // hops, averaged over components
};

/// Diameter and average shortest path per connected component with at least
/// two nodes, each component weighted equally.
PathStatistics component_path_statistics(const FigureGraph& g);

using Cycle = std::vector<Edge>;

enum class CycleBasisKind {
  Fundamental,  // fundamental cycles of a BFS spanning forest rooted at the lowest node id
  Minimum,      // minimum total length (Horton candidates, greedy over GF(2))
};

/// Cycle basis with m - n + c elements, each a simple cycle given as its edges.
std::vector<Cycle> cycle_basis(const FigureGraph& g, CycleBasisKind kind = CycleBasisKind::Fundamental);

/// Minimum number of edges whose removal disconnects a connected graph, via
/// unit-capacity max-flow from node 0 to every other node. Returns 0 for a
/// disconnected graph and for graphs with fewer than two nodes.
int edge_connectivity(const FigureGraph& g);

}  // namespace linefig
