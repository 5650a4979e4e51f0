#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linefig/knn_graph.hpp"
#include "linefig/matrix.hpp"

namespace linefig {

/// Categorical labels of graph nodes, stored as indices into `names`
/// (sorted, unique).
struct Labeling {
  std::vector<int> label;
  std::vector<std::string> names;

  [[nodiscard]] std::size_t class_count() const { return names.size(); }
  [[nodiscard]] std::vector<int> class_sizes() const;
  /// Index of `name`, or -1.
  [[nodiscard]] int find(std::string_view name) const;
};

Labeling make_labeling(std::span<const std::string> values);

/// Directed-edge counts between label classes. e_ij = counts(i, j) / total.
struct MixingMatrix {
  Matrix counts;
  double total = 0.0;

  [[nodiscard]] Matrix fractions() const { return counts / total; }
  [[nodiscard]] std::vector<double> a() const;  // row sums of e
  [[nodiscard]] std::vector<double> b() const;  // column sums of e
};

MixingMatrix mixing_matrix(const KnnGraph& g, std::span<const int> labels, int classes);

/// (tr e - sum a_i b_i) / (1 - sum a_i b_i). Throws ValidationError when
/// sum a_i b_i = 1 (a single label).
double assortativity_raw(const Matrix& e);
/// Same coefficient evaluated on integer counts, avoiding the rounding of
/// the fractions.
double assortativity_raw(const MixingMatrix& m);

/// r of the best achievable mixing for the given class sizes and out-degree:
/// a node of class c keeps min(p, n_c - 1)/p of its links inside c and sends
/// the rest to the other classes in proportion to their sizes.
double assortativity_max(std::span<const int> class_sizes, int p);

struct AssortativityResult {
  double r_raw = 0.0;
  double r_max = 1.0;
  double r = 0.0;        // r_raw / r_max
  double sigma_r = 0.0;  // jackknife over single-edge removals, normalized
};

AssortativityResult assortativity(const KnnGraph& g, const Labeling& labels);

/// Relabels to {focus, other} and computes assortativity.
AssortativityResult one_vs_others(const KnnGraph& g, const Labeling& labels, std::string_view focus);

enum class DeltaMode { Normalized, Raw };

/// r_m - r, where r is measured on the labels {c1, c2, other} and r_m after
/// merging c1 and c2.
double similarity_delta(const KnnGraph& g, const Labeling& labels, std::string_view c1, std::string_view c2,
                        DeltaMode mode = DeltaMode::Normalized);

struct SimilarityEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

struct SimilarityGraph {
  std::vector<std::string> names;
  std::vector<int> sizes;
  std::vector<SimilarityEdge> edges;  // a < b, weight = delta > threshold
};

/// Pairwise delta for all class pairs; entry (i, j) for i != j, zero diagonal.
Matrix similarity_matrix(const KnnGraph& g, const Labeling& labels, DeltaMode mode = DeltaMode::Normalized);

SimilarityGraph similarity_graph(const Matrix& deltas, const Labeling& labels, double threshold);
SimilarityGraph similarity_graph(const KnnGraph& g, const Labeling& labels, double threshold,
                                 DeltaMode mode = DeltaMode::Normalized);

std::string to_dot(const SimilarityGraph& graph);

struct PermutationBaseline {
  double mean = 0.0;
  double sigma = 0.0;  // standard deviation of the permuted r values
  std::vector<double> samples;
};

/// Normalized r under `trials` random shuffles of the node labels.
PermutationBaseline permutation_baseline(const KnnGraph& g, const Labeling& labels, int trials, std::uint64_t seed);

}  // namespace linefig
