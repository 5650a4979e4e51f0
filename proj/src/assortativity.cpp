#include "linefig/assortativity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "linefig/csv.hpp"
#include "linefig/errors.hpp"

namespace linefig {

std::vector<int> Labeling::class_sizes() const {
  std::vector<int> sizes(names.size(), 0);
  for (int l : label) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

int Labeling::find(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

Labeling make_labeling(std::span<const std::string> values) {
  Labeling out;
  out.names.assign(values.begin(), values.end());
  std::sort(out.names.begin(), out.names.end());
  out.names.erase(std::unique(out.names.begin(), out.names.end()), out.names.end());
  out.label.reserve(values.size());
  for (const auto& v : values) {
    out.label.push_back(static_cast<int>(std::lower_bound(out.names.begin(), out.names.end(), v) - out.names.begin()));
  }
  return out;
}

std::vector<double> MixingMatrix::a() const {
  std::vector<double> out(static_cast<std::size_t>(counts.rows()));
  for (Eigen::Index i = 0; i < counts.rows(); ++i) out[i] = counts.row(i).sum() / total;
  return out;
}

std::vector<double> MixingMatrix::b() const {
  std::vector<double> out(static_cast<std::size_t>(counts.cols()));
  for (Eigen::Index j = 0; j < counts.cols(); ++j) out[j] = counts.col(j).sum() / total;
  return out;
}

MixingMatrix mixing_matrix(const KnnGraph& g, std::span<const int> labels, int classes) {
  if (labels.size() != g.size()) throw ValidationError("mixing matrix: label count does not match node count");
  MixingMatrix m;
  m.counts = Matrix::Zero(classes, classes);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int j : g.out[i]) m.counts(labels[i], labels[static_cast<std::size_t>(j)]) += 1.0;
  }
  m.total = static_cast<double>(g.edge_count());
  if (m.total == 0.0) throw ValidationError("mixing matrix: graph has no edges");
  return m;
}

namespace {

// Sufficient statistics of the count form of r: trace, sum_c A_c B_c, total.
struct CountStats {
  double trace = 0.0;
  double sum_ab = 0.0;
  double total = 0.0;
};

CountStats count_stats(const Matrix& counts) {
  CountStats s;
  for (Eigen::Index c = 0; c < counts.rows(); ++c) {
    s.trace += counts(c, c);
    s.sum_ab += counts.row(c).sum() * counts.col(c).sum();
  }
  s.total = counts.sum();
  return s;
}

double raw_from_stats(double trace, double sum_ab, double total) {
  const double denom = total * total - sum_ab;
  if (denom == 0.0) throw ValidationError("assortativity undefined: single label");
  return (trace * total - sum_ab) / denom;
}

}  // namespace

double assortativity_raw(const Matrix& e) {
  if (e.rows() != e.cols()) throw ValidationError("mixing matrix must be square");
  double trace = 0.0;
  double sum_ab = 0.0;
  for (Eigen::Index c = 0; c < e.rows(); ++c) {
    trace += e(c, c);
    sum_ab += e.row(c).sum() * e.col(c).sum();
  }
  if (sum_ab == 1.0) throw ValidationError("assortativity undefined: single label");
  return (trace - sum_ab) / (1.0 - sum_ab);
}

double assortativity_raw(const MixingMatrix& m) {
  const auto s = count_stats(m.counts);
  return raw_from_stats(s.trace, s.sum_ab, s.total);
}

double assortativity_max(std::span<const int> class_sizes, int p) {
  if (p < 1) throw ValidationError("assortativity: out-degree must be positive");
  const double n = std::accumulate(class_sizes.begin(), class_sizes.end(), 0.0);
  const auto L = static_cast<Eigen::Index>(class_sizes.size());
  Matrix e = Matrix::Zero(L, L);
  for (Eigen::Index c = 0; c < L; ++c) {
    const double nc = class_sizes[c];
    if (nc == 0) continue;
    const double intra = std::min<double>(p, nc - 1) / p;
    e(c, c) = nc / n * intra;
    const double rest = n - nc;
    if (rest == 0) continue;
    for (Eigen::Index d = 0; d < L; ++d) {
      if (d != c) e(c, d) = nc / n * (1.0 - intra) * class_sizes[d] / rest;
    }
  }
  return assortativity_raw(e);
}

namespace {

AssortativityResult assortativity_impl(const KnnGraph& g, std::span<const int> labels, int classes,
                                       std::span<const int> sizes) {
  const auto mix = mixing_matrix(g, labels, classes);
  AssortativityResult res;
  res.r_raw = assortativity_raw(mix);
  res.r_max = assortativity_max(sizes, g.p);
  if (!(res.r_max > 0.0)) throw ValidationError("assortativity: maximum is not positive for these class sizes");
  res.r = res.r_raw / res.r_max;

  // Jackknife: removing edge i->j only changes the diagonal count (if
  // same-class) and the row/column sums of the two classes involved.
  std::vector<double> A(static_cast<std::size_t>(classes));
  std::vector<double> B(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    A[c] = mix.counts.row(c).sum();
    B[c] = mix.counts.col(c).sum();
  }
  const auto s = count_stats(mix.counts);
  const double m1 = s.total - 1.0;
  double var = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int li = labels[i];
    for (int j : g.out[i]) {
      const int lj = labels[static_cast<std::size_t>(j)];
      double trace = s.trace;
      double sum_ab = s.sum_ab;
      if (li == lj) {
        trace -= 1.0;
        sum_ab -= A[li] + B[li] - 1.0;
      } else {
        sum_ab -= B[li] + A[lj];
      }
      if (m1 * m1 == sum_ab) throw NumericalError("jackknife: removing one edge leaves a single label");
      const double rk = raw_from_stats(trace, sum_ab, m1) / res.r_max;
      var += (rk - res.r) * (rk - res.r);
    }
  }
  res.sigma_r = std::sqrt(var);
  return res;
}

void require_labels_match(const KnnGraph& g, const Labeling& labels) {
  if (labels.label.size() != g.size()) throw ValidationError("labels do not cover the graph nodes");
}

// Collapses a full class count matrix onto new classes via `map`.
Matrix collapse(const Matrix& counts, std::span<const int> map, int classes) {
  Matrix out = Matrix::Zero(classes, classes);
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) out(map[i], map[j]) += counts(i, j);
  }
  return out;
}

std::vector<int> collapse_sizes(std::span<const int> sizes, std::span<const int> map, int classes) {
  std::vector<int> out(static_cast<std::size_t>(classes), 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) out[map[i]] += sizes[i];
  return out;
}

double coefficient(const Matrix& counts, std::span<const int> sizes, int p, DeltaMode mode) {
  const auto s = count_stats(counts);
  const double raw = raw_from_stats(s.trace, s.sum_ab, s.total);
  if (mode == DeltaMode::Raw) return raw;
  const double rmax = assortativity_max(sizes, p);
  if (!(rmax > 0.0)) throw ValidationError("assortativity: maximum is not positive for these class sizes");
  return raw / rmax;
}

// Delta for classes x < y given the full class counts.
double delta_from_counts(const Matrix& counts, std::span<const int> sizes, int p, int x, int y, DeltaMode mode) {
  const auto L = static_cast<int>(sizes.size());
  std::vector<int> three(static_cast<std::size_t>(L), 2);
  three[x] = 0;
  three[y] = 1;
  std::vector<int> merged(static_cast<std::size_t>(L), 1);
  merged[x] = 0;
  merged[y] = 0;
  const double r = coefficient(collapse(counts, three, 3), collapse_sizes(sizes, three, 3), p, mode);
  const double rm = coefficient(collapse(counts, merged, 2), collapse_sizes(sizes, merged, 2), p, mode);
  return rm - r;
}

}  // namespace

AssortativityResult assortativity(const KnnGraph& g, const Labeling& labels) {
  require_labels_match(g, labels);
  const auto sizes = labels.class_sizes();
  if (std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 0; }) < 2) {
    throw ValidationError("assortativity undefined: single label");
  }
  return assortativity_impl(g, labels.label, static_cast<int>(labels.class_count()), sizes);
}

AssortativityResult one_vs_others(const KnnGraph& g, const Labeling& labels, std::string_view focus) {
  require_labels_match(g, labels);
  const int f = labels.find(focus);
  if (f < 0) throw ValidationError("unknown label: " + std::string(focus));
  Labeling two;
  two.names = {std::string(focus), "(others)"};
  two.label.reserve(labels.label.size());
  for (int l : labels.label) two.label.push_back(l == f ? 0 : 1);
  return assortativity(g, two);
}

double similarity_delta(const KnnGraph& g, const Labeling& labels, std::string_view c1, std::string_view c2,
                        DeltaMode mode) {
  require_labels_match(g, labels);
  int x = labels.find(c1);
  int y = labels.find(c2);
  if (x < 0) throw ValidationError("unknown label: " + std::string(c1));
  if (y < 0) throw ValidationError("unknown label: " + std::string(c2));
  if (x == y) throw ValidationError("similarity needs two different labels");
  if (x > y) std::swap(x, y);
  const auto L = static_cast<int>(labels.class_count());
  const auto mix = mixing_matrix(g, labels.label, L);
  return delta_from_counts(mix.counts, labels.class_sizes(), g.p, x, y, mode);
}

Matrix similarity_matrix(const KnnGraph& g, const Labeling& labels, DeltaMode mode) {
  require_labels_match(g, labels);
  const auto L = static_cast<int>(labels.class_count());
  if (L < 3) throw ValidationError("similarity needs at least three labels");
  const auto mix = mixing_matrix(g, labels.label, L);
  const auto sizes = labels.class_sizes();
  Matrix out = Matrix::Zero(L, L);
  for (int x = 0; x < L; ++x) {
    for (int y = x + 1; y < L; ++y) {
      out(x, y) = out(y, x) = delta_from_counts(mix.counts, sizes, g.p, x, y, mode);
    }
  }
  return out;
}

SimilarityGraph similarity_graph(const Matrix& deltas, const Labeling& labels, double threshold) {
  if (threshold < 0.0 || std::isnan(threshold)) throw ValidationError("similarity threshold must be >= 0");
  const auto L = static_cast<Eigen::Index>(labels.class_count());
  if (deltas.rows() != L || deltas.cols() != L) throw ValidationError("similarity matrix size does not match labels");
  SimilarityGraph out;
  out.names = labels.names;
  out.sizes = labels.class_sizes();
  for (Eigen::Index x = 0; x < L; ++x) {
    for (Eigen::Index y = x + 1; y < L; ++y) {
      if (deltas(x, y) > threshold) out.edges.push_back({static_cast<int>(x), static_cast<int>(y), deltas(x, y)});
    }
  }
  return out;
}

SimilarityGraph similarity_graph(const KnnGraph& g, const Labeling& labels, double threshold, DeltaMode mode) {
  return similarity_graph(similarity_matrix(g, labels, mode), labels, threshold);
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const SimilarityGraph& graph) {
  std::ostringstream os;
  os << "graph similarity {\n";
  for (std::size_t i = 0; i < graph.names.size(); ++i) {
    os << "  " << dot_quote(graph.names[i]) << " [size=" << graph.sizes[i] << "];\n";
  }
  for (const auto& e : graph.edges) {
    os << "  " << dot_quote(graph.names[e.a]) << " -- " << dot_quote(graph.names[e.b])
       << " [weight=" << csv::format_double(e.weight) << "];\n";
  }
  os << "}\n";
  return os.str();
}

PermutationBaseline permutation_baseline(const KnnGraph& g, const Labeling& labels, int trials, std::uint64_t seed) {
  if (trials < 2) throw ValidationError("permutation baseline needs at least two trials");
  require_labels_match(g, labels);
  std::mt19937_64 rng(seed);
  Labeling shuffled = labels;
  PermutationBaseline out;
  out.samples.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    std::shuffle(shuffled.label.begin(), shuffled.label.end(), rng);
    const auto sizes = shuffled.class_sizes();
    const auto mix = mixing_matrix(g, shuffled.label, static_cast<int>(shuffled.class_count()));
    out.samples.push_back(coefficient(mix.counts, sizes, g.p, DeltaMode::Normalized));
  }
  out.mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) / trials;
  double var = 0.0;
  for (double r : out.samples) var += (r - out.mean) * (r - out.mean);
  out.sigma = std::sqrt(var / (trials - 1));
  return out;
}

}  // namespace linefig
