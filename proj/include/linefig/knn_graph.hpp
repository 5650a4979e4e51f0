#pragma once

#include <cstddef>
#include <vector>

#include "linefig/matrix.hpp"

namespace linefig {

/// Directed nearest-neighbour graph with constant out-degree p.
struct KnnGraph {
  int p = 0;
  std::vector<std::vector<int>> out;  // out[i]: p targets, nearest first

  [[nodiscard]] std::size_t size() const { return out.size(); }
  [[nodiscard]] std::size_t edge_count() const { return out.size() * static_cast<std::size_t>(p); }
};

/// Links every row of F to its p nearest rows by squared Euclidean distance.
/// Equal distances go to the lower row index. Throws unless 1 <= p < n.
KnnGraph knn_graph(const Matrix& F, int p);

/// round(rows / groups), clamped to [1, rows - 1].
int default_outdegree(std::size_t rows, std::size_t groups);

}  // namespace linefig
