#include <algorithm>
#include <numeric>
#include <vector>

#include "linefig/errors.hpp"
#include "linefig/tsne.hpp"

namespace linefig {

namespace {

// Indices of all rows except `self`, ordered by distance to row `self`
// with ties broken by index.
std::vector<Eigen::Index> neighbour_order(const Matrix& M, Eigen::Index self) {
  std::vector<double> dist(static_cast<std::size_t>(M.rows()));
  for (Eigen::Index j = 0; j < M.rows(); ++j) dist[j] = (M.row(self) - M.row(j)).squaredNorm();
  std::vector<Eigen::Index> order;
  order.reserve(dist.size());
  for (Eigen::Index j = 0; j < M.rows(); ++j) {
    if (j != self) order.push_back(j);
  }
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
  return order;
}

}  // namespace

double trustworthiness(const Matrix& X, const Matrix& Y, int k) {
  const auto n = X.rows();
  if (Y.rows() != n) throw ValidationError("trustworthiness: row count mismatch");
  if (k < 1 || 2 * static_cast<Eigen::Index>(k) >= n) throw ValidationError("trustworthiness: k out of range");

  std::vector<Eigen::Index> rank(static_cast<std::size_t>(n));
  double penalty = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto original = neighbour_order(X, i);
    for (std::size_t r = 0; r < original.size(); ++r) rank[original[r]] = static_cast<Eigen::Index>(r + 1);
    const auto embedded = neighbour_order(Y, i);
    for (int r = 0; r < k; ++r) {
      const auto j = embedded[r];
      if (rank[j] > k) penalty += static_cast<double>(rank[j] - k);
    }
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return 1.0 - 2.0 / (nn * kk * (2.0 * nn - 3.0 * kk - 1.0)) * penalty;
}

}  // namespace linefig
