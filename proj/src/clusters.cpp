#include "linefig/clusters.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "linefig/csv.hpp"
#include "linefig/errors.hpp"

namespace linefig {

std::string classify_rules(const Signature& sig, int tendrils, const RuleThresholds& t) {
  if (sig.num_links == 1) return "C1";
  if (sig.planar == 0) return "C4";
  if (sig.spatial_diameter >= t.large_span_deg && sig.avg_mag <= t.bright_mag) return "C3";
  if (sig.num_cycles >= 1 && tendrils == 0) {
    if (sig.largest_cycle == 3) return "C6";
    if (sig.largest_cycle > 3) return "C7";
  }
  if (sig.num_cycles >= 1) return "C5";
  return "C2";
}

std::string_view to_string(ClusterSource s) {
  switch (s) {
    case ClusterSource::External: return "external";
    case ClusterSource::Rules: return "rules";
    case ClusterSource::Kmeans: return "kmeans";
  }
  return "external";
}

ClusterSource parse_cluster_source(std::string_view token) {
  if (token == "external") return ClusterSource::External;
  if (token == "rules") return ClusterSource::Rules;
  if (token == "kmeans") return ClusterSource::Kmeans;
  throw ValidationError("unknown cluster source: " + std::string(token));
}

namespace {

double sq_dist(const Matrix& X, Eigen::Index i, const Matrix& C, Eigen::Index c) {
  return (X.row(i) - C.row(c)).squaredNorm();
}

Matrix plus_plus_seed(const Matrix& X, int k, std::mt19937_64& rng) {
  const auto n = X.rows();
  Matrix C(k, X.cols());
  std::vector<double> d2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  Eigen::Index pick = first(rng);
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) total += d2[i];
      pick = -1;
      if (total > 0.0) {
        double target = unit(rng) * total;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (d2[i] == 0.0) continue;
          pick = i;
          target -= d2[i];
          if (target < 0.0) break;
        }
      }
      if (pick < 0) {  // all remaining points coincide with a centroid
        pick = std::find(chosen.begin(), chosen.end(), 0) - chosen.begin();
      }
    }
    chosen[pick] = 1;
    C.row(c) = X.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(X, i, C, c));
  }
  return C;
}

}  // namespace

KmeansResult kmeans(const Matrix& X, int k, std::uint64_t seed, int max_iterations) {
  const auto n = X.rows();
  if (k < 1 || k > n) throw ValidationError("kmeans: k must satisfy 1 <= k <= n");
  if (max_iterations < 1) throw ValidationError("kmeans: max_iterations must be positive");
  std::mt19937_64 rng(seed);
  KmeansResult res;
  res.centroids = plus_plus_seed(X, k, rng);
  res.labels.assign(static_cast<std::size_t>(n), -1);

  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    double objective = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(X, i, res.centroids, 0);
      for (int c = 1; c < k; ++c) {
        const double d = sq_dist(X, i, res.centroids, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      objective += best_d;
      if (res.labels[i] != best) {
        res.labels[i] = best;
        changed = true;
      }
    }
    res.objective.push_back(objective);
    res.iterations = it + 1;
    if (!changed) {
      res.converged = true;
      break;
    }

    Matrix sums = Matrix::Zero(k, X.cols());
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(res.labels[i]) += X.row(i);
      ++sizes[res.labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) {
        res.centroids.row(c) = sums.row(c) / sizes[c];
        continue;
      }
      // Empty cluster: move its centroid onto the point farthest from its own centroid.
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = sq_dist(X, i, res.centroids, res.labels[i]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      res.centroids.row(c) = X.row(far);
      ++res.reseeds;
    }
  }
  return res;
}

ClusterAssignment load_labels(std::istream& in, std::span<const std::string> keys, std::string_view source) {
  std::set<std::string> known(keys.begin(), keys.end());
  std::map<std::string, std::vector<std::string>> by_figure_id;
  for (const auto& key : keys) {
    const auto slash = key.find('/');
    by_figure_id[slash == std::string::npos ? key : key.substr(slash + 1)].push_back(key);
  }

  ClusterAssignment out;
  out.source = ClusterSource::External;
  csv::LineReader reader(in);
  std::string line;
  bool first = true;
  while (reader.next(line)) {
    const auto where = std::string(source) + ":" + std::to_string(reader.line_number()) + ": ";
    const auto fields = csv::split(line);
    if (first) {
      first = false;
      if (fields.size() == 2 && fields[0] == "figure_id" && fields[1] == "cluster") continue;
    }
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ValidationError(where + "expected figure_id,cluster");
    }
    std::string key = fields[0];
    if (!known.count(key)) {
      const auto it = by_figure_id.find(key);
      if (it == by_figure_id.end()) throw ValidationError(where + "unknown figure id " + fields[0]);
      if (it->second.size() > 1) throw ValidationError(where + "ambiguous figure id " + fields[0]);
      key = it->second.front();
    }
    if (!out.labels.emplace(key, fields[1]).second) throw ValidationError(where + "duplicate figure id " + fields[0]);
  }

  std::vector<std::string> missing;
  for (const auto& key : keys) {
    if (!out.labels.count(key)) missing.push_back(key);
  }
  if (!missing.empty()) {
    std::string msg = std::string(source) + ": missing cluster label for";
    for (const auto& m : missing) msg += " " + m;
    throw ValidationError(msg);
  }
  std::set<std::string> distinct;
  for (const auto& [key, label] : out.labels) distinct.insert(label);
  out.k = static_cast<int>(distinct.size());
  if (out.k < 2) throw ValidationError(std::string(source) + ": need at least two clusters");
  return out;
}

void write_labels(std::ostream& out, const ClusterAssignment& assignment) {
  out << "figure_id,cluster\n";
  for (const auto& [key, label] : assignment.labels) out << key << ',' << label << '\n';
}

}  // namespace linefig
