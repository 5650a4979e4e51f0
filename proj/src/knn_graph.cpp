#include "linefig/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "linefig/errors.hpp"

namespace linefig {

KnnGraph knn_graph(const Matrix& F, int p) {
  const auto n = static_cast<int>(F.rows());
  if (p < 1 || p >= n) {
    throw ValidationError("knn: p must satisfy 1 <= p < n (p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
  }
  KnnGraph g;
  g.p = p;
  g.out.resize(static_cast<std::size_t>(n));
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      dist[j] = (F.row(i) - F.row(j)).squaredNorm();
      order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + p, order.end(),
                      [&](int a, int b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
    g.out[i].assign(order.begin(), order.begin() + p);
  }
  return g;
}

int default_outdegree(std::size_t rows, std::size_t groups) {
  if (rows < 2) throw ValidationError("knn: need at least two rows");
  if (groups == 0) throw ValidationError("knn: no groups to derive p from");
  const auto p = static_cast<long long>(std::llround(static_cast<double>(rows) / static_cast<double>(groups)));
  return static_cast<int>(std::clamp<long long>(p, 1, static_cast<long long>(rows) - 1));
}

}  // namespace linefig
