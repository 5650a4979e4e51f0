#include "linefig/graph_algorithms.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>

namespace linefig {

Components connected_components(const FigureGraph& g) {
  Components c;
  c.label.assign(g.node_count(), -1);
  for (int s = 0; s < g.node_count(); ++s) {
    if (c.label[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    c.label[s] = c.count;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        if (c.label[v] < 0) {
          c.label[v] = c.count;
          q.push(v);
        }
      }
    }
    ++c.count;
  }
  return c;
}

std::vector<int> bfs_distances(const FigureGraph& g, int source) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::vector<int> core_numbers(const FigureGraph& g) {
  const int n = g.node_count();
  std::vector<int> degree(n);
  int max_degree = 0;
  for (int u = 0; u < n; ++u) {
    degree[u] = g.degree(u);
    max_degree = std::max(max_degree, degree[u]);
  }
  // Bucket sort nodes by degree.
  std::vector<int> bin(max_degree + 1, 0);
  for (int d : degree) ++bin[d];
  for (int d = 0, start = 0; d <= max_degree; ++d) {
    const int count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<int> order(n), position(n);
  for (int u = 0; u < n; ++u) {
    position[u] = bin[degree[u]]++;
    order[position[u]] = u;
  }
  for (int d = max_degree; d > 0; --d) bin[d] = bin[d - 1];
  if (max_degree >= 0 && !bin.empty()) bin[0] = 0;

  for (int i = 0; i < n; ++i) {
    const int u = order[i];
    for (int v : g.neighbors(u)) {
      if (degree[v] > degree[u]) {
        const int dv = degree[v];
        const int pv = position[v];
        const int pw = bin[dv];
        const int w = order[pw];
        if (v != w) {
          order[pv] = w;
          position[w] = pv;
          order[pw] = v;
          position[v] = pw;
        }
        ++bin[dv];
        --degree[v];
      }
    }
  }
  return degree;
}

double average_clustering(const FigureGraph& g) {
  const int n = g.node_count();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    const auto nbs = g.neighbors(u);
    const auto k = nbs.size();
    if (k < 2) continue;
    int links = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (g.has_edge(nbs[i], nbs[j])) ++links;
      }
    }
    total += 2.0 * links / static_cast<double>(k * (k - 1));
  }
  return total / n;
}

PathStatistics component_path_statistics(const FigureGraph& g) {
  const auto comps = connected_components(g);
  std::vector<int> diameter(comps.count, 0);
  std::vector<double> path_sum(comps.count, 0.0);
  std::vector<long long> pairs(comps.count, 0);
  for (int u = 0; u < g.node_count(); ++u) {
    const auto dist = bfs_distances(g, u);
    const int c = comps.label[u];
    for (int v = 0; v < g.node_count(); ++v) {
      if (v == u || dist[v] < 0) continue;
      diameter[c] = std::max(diameter[c], dist[v]);
      path_sum[c] += dist[v];
      ++pairs[c];
    }
  }
  PathStatistics stats;
  int counted = 0;
  for (int c = 0; c < comps.count; ++c) {
    if (pairs[c] == 0) continue;  // single-node component
    stats.mean_diameter += diameter[c];
    stats.mean_shortest_path += path_sum[c] / static_cast<double>(pairs[c]);
    ++counted;
  }
  if (counted > 0) {
    stats.mean_diameter /= counted;
    stats.mean_shortest_path /= counted;
  }
  return stats;
}

namespace {

struct BfsTree {
  std::vector<int> parent;
  std::vector<int> depth;
};

// BFS from `root`, visiting neighbours in ascending order; parent[root] = root.
void grow_bfs_tree(const FigureGraph& g, int root, BfsTree& tree) {
  std::queue<int> q;
  tree.parent[root] = root;
  tree.depth[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if (tree.parent[v] < 0) {
        tree.parent[v] = u;
        tree.depth[v] = tree.depth[u] + 1;
        q.push(v);
      }
    }
  }
}

Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Cycle closed by the non-tree edge (u, v) through the tree paths to their
// lowest common ancestor.
Cycle tree_cycle(const BfsTree& tree, int u, int v) {
  Cycle up;
  Cycle down;
  int a = u;
  int b = v;
  while (tree.depth[a] > tree.depth[b]) {
    up.push_back(make_edge(a, tree.parent[a]));
    a = tree.parent[a];
  }
  while (tree.depth[b] > tree.depth[a]) {
    down.push_back(make_edge(b, tree.parent[b]));
    b = tree.parent[b];
  }
  while (a != b) {
    up.push_back(make_edge(a, tree.parent[a]));
    down.push_back(make_edge(b, tree.parent[b]));
    a = tree.parent[a];
    b = tree.parent[b];
  }
  Cycle cycle = std::move(up);
  cycle.insert(cycle.end(), down.rbegin(), down.rend());
  cycle.push_back(make_edge(u, v));
  return cycle;
}

std::vector<Cycle> fundamental_basis(const FigureGraph& g) {
  const int n = g.node_count();
  BfsTree tree{std::vector<int>(n, -1), std::vector<int>(n, 0)};
  for (int root = 0; root < n; ++root) {
    if (tree.parent[root] < 0) grow_bfs_tree(g, root, tree);
  }
  std::vector<Cycle> basis;
  for (const auto& [u, v] : g.edges()) {
    if (tree.parent[u] == v || tree.parent[v] == u) continue;
    basis.push_back(tree_cycle(tree, u, v));
  }
  return basis;
}

using BitRow = std::vector<std::uint64_t>;

std::vector<Cycle> minimum_basis(const FigureGraph& g) {
  const int n = g.node_count();
  const int m = g.edge_count();
  const auto comps = connected_components(g);
  const std::size_t target = static_cast<std::size_t>(m - n + comps.count);
  if (target == 0) return {};

  std::map<Edge, int> edge_index;
  for (int i = 0; i < m; ++i) edge_index.emplace(g.edges()[i], i);
  const std::size_t words = (static_cast<std::size_t>(m) + 63) / 64;

  struct Candidate {
    Cycle cycle;
    BitRow bits;
  };
  std::vector<Candidate> candidates;
  for (int x = 0; x < n; ++x) {
    BfsTree tree{std::vector<int>(n, -1), std::vector<int>(n, 0)};
    grow_bfs_tree(g, x, tree);
    for (const auto& [u, v] : g.edges()) {
      if (tree.parent[u] < 0 || tree.parent[u] == v || tree.parent[v] == u) continue;
      // Keep only cycles whose two tree paths meet at x alone.
      std::vector<char> on_path(n, 0);
      for (int a = u; a != x; a = tree.parent[a]) on_path[a] = 1;
      bool simple = true;
      for (int b = v; b != x; b = tree.parent[b]) {
        if (on_path[b]) {
          simple = false;
          break;
        }
      }
      if (!simple) continue;
      Candidate c{tree_cycle(tree, u, v), BitRow(words, 0)};
      for (const auto& e : c.cycle) {
        const int i = edge_index.at(e);
        c.bits[i / 64] ^= std::uint64_t{1} << (i % 64);
      }
      candidates.push_back(std::move(c));
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.cycle.size() < b.cycle.size(); });

  // Greedy selection of independent cycles; rows kept in echelon form keyed
  // by their leading bit.
  std::vector<std::pair<int, BitRow>> echelon;
  std::vector<Cycle> basis;
  const auto leading_bit = [&](const BitRow& row) {
    for (std::size_t w = words; w-- > 0;) {
      if (row[w] != 0) return static_cast<int>(w * 64 + 63 - __builtin_clzll(row[w]));
    }
    return -1;
  };
  for (auto& c : candidates) {
    BitRow row = c.bits;
    for (const auto& [lead, r] : echelon) {
      if ((row[lead / 64] >> (lead % 64)) & 1U) {
        for (std::size_t w = 0; w < words; ++w) row[w] ^= r[w];
      }
    }
    const int lead = leading_bit(row);
    if (lead < 0) continue;
    // Insert keeping leads in descending order so reduction stays valid.
    const auto pos = std::find_if(echelon.begin(), echelon.end(), [&](const auto& e) { return e.first < lead; });
    echelon.insert(pos, {lead, std::move(row)});
    basis.push_back(std::move(c.cycle));
    if (basis.size() == target) break;
  }
  return basis;
}

}  // namespace

std::vector<Cycle> cycle_basis(const FigureGraph& g, CycleBasisKind kind) {
  return kind == CycleBasisKind::Fundamental ? fundamental_basis(g) : minimum_basis(g);
}

int edge_connectivity(const FigureGraph& g) {
  const int n = g.node_count();
  if (n < 2) return 0;
  if (connected_components(g).count > 1) return 0;

  // Residual capacities on arcs u->v for each undirected edge, both directions.
  std::vector<std::vector<int>> arc_to(n);
  std::vector<std::vector<int>> arc_rev(n);
  for (const auto& [u, v] : g.edges()) {
    arc_rev[u].push_back(static_cast<int>(arc_to[v].size()));
    arc_rev[v].push_back(static_cast<int>(arc_to[u].size()));
    arc_to[u].push_back(v);
    arc_to[v].push_back(u);
  }

  int best = std::numeric_limits<int>::max();
  for (int t = 1; t < n; ++t) {
    std::vector<std::vector<int>> cap(n);
    for (int u = 0; u < n; ++u) cap[u].assign(arc_to[u].size(), 1);
    int flow = 0;
    while (flow < best) {
      std::vector<std::pair<int, int>> via(n, {-1, -1});  // (node, arc index)
      std::queue<int> q;
      q.push(0);
      via[0] = {0, -1};
      while (!q.empty() && via[t].first < 0) {
        const int u = q.front();
        q.pop();
        for (std::size_t a = 0; a < arc_to[u].size(); ++a) {
          const int v = arc_to[u][a];
          if (cap[u][a] > 0 && via[v].first < 0) {
            via[v] = {u, static_cast<int>(a)};
            q.push(v);
          }
        }
      }
      if (via[t].first < 0) break;
      for (int v = t; v != 0;) {
        const auto [u, a] = via[v];
        --cap[u][a];
        ++cap[v][arc_rev[u][a]];
        v = u;
      }
      ++flow;
    }
    best = std::min(best, flow);
  }
  return best;
}

}  // namespace linefig
