#include "oracles/graph_oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace oracle {

std::vector<std::uint32_t> SmallGraph::adjacency() const {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

int max_degree(const SmallGraph& g) {
  int best = 0;
  for (auto a : g.adjacency()) best = std::max(best, std::popcount(a));
  return best;
}

int max_core(const SmallGraph& g) {
  const auto adj = g.adjacency();
  int best = 0;
  for (std::uint32_t s = 1; s < (1u << g.n); ++s) {
    int min_deg = std::numeric_limits<int>::max();
    for (int v = 0; v < g.n; ++v) {
      if (s >> v & 1u) min_deg = std::min(min_deg, std::popcount(adj[v] & s));
    }
    best = std::max(best, min_deg);
  }
  return best;
}

double average_clustering(const SmallGraph& g) {
  const auto adj = g.adjacency();
  double sum = 0.0;
  for (int v = 0; v < g.n; ++v) {
    const int d = std::popcount(adj[v]);
    if (d < 2) continue;
    int triangles = 0;
    for (int a = 0; a < g.n; ++a) {
      for (int b = a + 1; b < g.n; ++b) {
        if ((adj[v] >> a & 1u) && (adj[v] >> b & 1u) && (adj[a] >> b & 1u)) ++triangles;
      }
    }
    sum += 2.0 * triangles / (d * (d - 1.0));
  }
  return sum / g.n;
}

namespace {

std::vector<int> component_labels(const SmallGraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : g.edges) parent[find(u)] = find(v);
  std::vector<int> out(static_cast<std::size_t>(g.n));
  for (int v = 0; v < g.n; ++v) out[v] = find(v);
  return out;
}

}  // namespace

int components(const SmallGraph& g) {
  auto labels = component_labels(g);
  std::sort(labels.begin(), labels.end());
  return static_cast<int>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

int cyclomatic_number(const SmallGraph& g) { return static_cast<int>(g.edges.size()) - g.n + components(g); }

Paths path_statistics(const SmallGraph& g) {
  constexpr int inf = 1 << 20;
  std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, inf));
  for (int v = 0; v < g.n; ++v) d[v][v] = 0;
  for (const auto& [u, v] : g.edges) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);

  const auto label = component_labels(g);
  std::vector<int> roots(label.begin(), label.end());
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  Paths p;
  int counted = 0;
  for (int r : roots) {
    int diameter = 0;
    double sum = 0.0;
    int pairs = 0;
    for (int i = 0; i < g.n; ++i) {
      for (int j = i + 1; j < g.n; ++j) {
        if (label[i] != r || label[j] != r) continue;
        diameter = std::max(diameter, d[i][j]);
        sum += d[i][j];
        ++pairs;
      }
    }
    if (pairs == 0) continue;
    p.mean_diameter += diameter;
    p.mean_shortest_path += sum / pairs;
    ++counted;
  }
  if (counted > 0) {
    p.mean_diameter /= counted;
    p.mean_shortest_path /= counted;
  }
  return p;
}

int edge_connectivity(const SmallGraph& g) {
  if (g.n < 2) return 0;
  int best = std::numeric_limits<int>::max();
  // Vertex 0 always on the S side; every other vertex free.
  for (std::uint32_t s = 1; s < (1u << g.n) - 1; s += 2) {
    int cut = 0;
    for (const auto& [u, v] : g.edges) cut += ((s >> u & 1u) != (s >> v & 1u));
    best = std::min(best, cut);
  }
  return best;
}

std::vector<std::uint64_t> simple_cycles(const SmallGraph& g) {
  std::vector<std::vector<int>> edge_id(g.n, std::vector<int>(g.n, -1));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    edge_id[g.edges[i].first][g.edges[i].second] = edge_id[g.edges[i].second][g.edges[i].first] = static_cast<int>(i);
  }
  std::vector<std::uint64_t> out;
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(g.n), 0);
  // Cycles whose smallest vertex is `start`; each found twice (once per
  // direction) and kept when the second vertex is smaller than the last.
  auto dfs = [&](auto&& self, int start, int v, std::uint64_t mask) -> void {
    for (int w = 0; w < g.n; ++w) {
      if (edge_id[v][w] < 0) continue;
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        out.push_back(mask | (1ull << edge_id[v][w]));
        continue;
      }
      if (w <= start || on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      self(self, start, w, mask | (1ull << edge_id[v][w]));
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (int s = 0; s < g.n; ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(dfs, s, s, 0);
    on_path[s] = 0;
  }
  return out;
}

namespace {

// Inserts `mask` into an echelon basis keyed by leading bit; false if dependent.
bool insert_reduced(std::vector<std::uint64_t>& pivots, std::uint64_t mask) {
  while (mask) {
    const int lead = 63 - std::countl_zero(mask);
    if (pivots[lead] == 0) {
      pivots[lead] = mask;
      return true;
    }
    mask ^= pivots[lead];
  }
  return false;
}

}  // namespace

bool independent(std::vector<std::uint64_t> masks) {
  std::vector<std::uint64_t> pivots(64, 0);
  for (auto m : masks) {
    if (!insert_reduced(pivots, m)) return false;
  }
  return true;
}

int minimum_basis_max_length(const SmallGraph& g, const std::vector<std::uint64_t>& cycles) {
  std::vector<std::uint64_t> sorted = cycles;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::uint64_t> pivots(64, 0);
  const int rank = cyclomatic_number(g);
  int taken = 0;
  int longest = 0;
  for (auto c : sorted) {
    if (taken == rank) break;
    if (insert_reduced(pivots, c)) {
      ++taken;
      longest = std::max(longest, std::popcount(c));
    }
  }
  return longest;
}

int fundamental_basis_max_length(const SmallGraph& g) {
  const auto adj = g.adjacency();
  std::vector<int> parent(static_cast<std::size_t>(g.n), -2);
  std::vector<int> depth(static_cast<std::size_t>(g.n), 0);
  for (int root = 0; root < g.n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::vector<int> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int w = 0; w < g.n; ++w) {
        if ((adj[v] >> w & 1u) && parent[w] == -2) {
          parent[w] = v;
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  int longest = 0;
  for (const auto& [u, v] : g.edges) {
    if (parent[u] == v || parent[v] == u) continue;
    int a = u, b = v;
    while (a != b) {
      if (depth[a] >= depth[b]) a = parent[a];
      else b = parent[b];
    }
    longest = std::max(longest, depth[u] + depth[v] + 1 - 2 * depth[a]);
  }
  return longest;
}

}  // namespace oracle
