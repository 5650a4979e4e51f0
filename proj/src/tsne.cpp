#include "linefig/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

#include "linefig/artifacts.hpp"
#include "linefig/errors.hpp"
#include "linefig/pca.hpp"

namespace linefig {

namespace {

constexpr double kProbabilityFloor = 1e-12;
constexpr double kInitScale = 1e-4;
constexpr double kJitterScale = 1e-5;

Matrix squared_distances(const Matrix& X) {
  const auto n = X.rows();
  Matrix d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (X.row(i) - X.row(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

// Student-t kernel terms 1 / (1 + |y_i - y_j|^2); diagonal is zero.
Matrix student_kernel(const Matrix& Y, double* total) {
  const auto n = Y.rows();
  Matrix num(n, n);
  double z = 0.0;
  const auto d = Y.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    num(i, i) = 0.0;
    const double* yi = Y.data() + i * d;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double* yj = Y.data() + j * d;
      double sq = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) sq += (yi[c] - yj[c]) * (yi[c] - yj[c]);
      const double v = 1.0 / (1.0 + sq);
      num(i, j) = v;
      num(j, i) = v;
      z += 2.0 * v;
    }
  }
  *total = z;
  return num;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace

void TsneParams::validate(std::size_t n) const {
  if (dims < 1) throw ValidationError("tsne: dims must be positive");
  if (n < 4) throw ValidationError("tsne: needs at least 4 points");
  if (!(perplexity > 0.0) || !(perplexity < (static_cast<double>(n) - 1.0) / 3.0)) {
    throw ValidationError("tsne: perplexity must be in (0, (n - 1) / 3)");
  }
  if (!(learning_rate > 0.0)) throw ValidationError("tsne: learning rate must be positive");
  if (restarts < 1) throw ValidationError("tsne: restarts must be >= 1");
  if (exaggeration_iterations < 0 || iterations < exaggeration_iterations) {
    throw ValidationError("tsne: iterations must cover the early exaggeration phase");
  }
  if (!(early_exaggeration >= 1.0)) throw ValidationError("tsne: early exaggeration must be >= 1");
}

PerplexityResult calibrate_perplexity(std::span<const double> sq, double perplexity, double tolerance,
                                      int max_iterations) {
  PerplexityResult res;
  const std::size_t m = sq.size();
  res.probabilities.assign(m, 0.0);
  if (m == 0) return res;
  const double target = std::log(perplexity);
  // Sums run over the distances in sorted order, so rows holding the same
  // distances in a different order get bitwise-identical results.
  std::vector<double> sorted(sq.begin(), sq.end());
  std::sort(sorted.begin(), sorted.end());
  const double d_min = sorted.front();

  double beta = 1.0;
  double beta_lo = -std::numeric_limits<double>::infinity();
  double beta_hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    // Shifting by the smallest distance keeps exp() from underflowing.
    double sum = 0.0;
    double weighted = 0.0;
    for (const double d : sorted) {
      const double shifted = d - d_min;
      const double p = std::exp(-beta * shifted);
      sum += p;
      weighted += shifted * p;
    }
    res.entropy = std::log(sum) + beta * weighted / sum;
    for (std::size_t j = 0; j < m; ++j) res.probabilities[j] = std::exp(-beta * (sq[j] - d_min)) / sum;
    res.beta = beta;
    res.iterations = it + 1;

    const double diff = res.entropy - target;
    if (std::abs(diff) < tolerance) {
      res.converged = true;
      break;
    }
    if (diff > 0) {
      beta_lo = beta;
      beta = std::isinf(beta_hi) ? beta * 2.0 : (beta + beta_hi) / 2.0;
    } else {
      beta_hi = beta;
      beta = std::isinf(beta_lo) ? beta / 2.0 : (beta + beta_lo) / 2.0;
    }
  }
  return res;
}

Matrix joint_probabilities(const Matrix& X, double perplexity, int* unconverged_rows) {
  const auto n = X.rows();
  const Matrix dist = squared_distances(X);
  Matrix cond = Matrix::Zero(n, n);
  int unconverged = 0;
  std::vector<double> row(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0, k = 0; j < n; ++j) {
      if (j != i) row[k++] = dist(i, j);
    }
    const auto res = calibrate_perplexity(row, perplexity);
    if (!res.converged) ++unconverged;
    for (Eigen::Index j = 0, k = 0; j < n; ++j) {
      if (j != i) cond(i, j) = res.probabilities[k++];
    }
  }
  if (unconverged_rows != nullptr) *unconverged_rows = unconverged;

  // Mix in a uniform floor so every off-diagonal entry is >= 1e-12 and the
  // total stays exactly one.
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  const double keep = 1.0 - kProbabilityFloor * pairs;
  Matrix P(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    P(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = keep * (cond(i, j) + cond(j, i)) / (2.0 * static_cast<double>(n)) + kProbabilityFloor;
      P(i, j) = v;
      P(j, i) = v;
    }
  }
  return P;
}

double kl_divergence(const Matrix& P, const Matrix& Y) {
  double z = 0.0;
  const Matrix num = student_kernel(Y, &z);
  double kl = 0.0;
  const auto n = P.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || P(i, j) <= 0.0) continue;
      const double q = std::max(num(i, j) / z, std::numeric_limits<double>::min());
      kl += P(i, j) * std::log(P(i, j) / q);
    }
  }
  return kl;
}

Matrix kl_gradient(const Matrix& P, const Matrix& Y, double exaggeration) {
  double z = 0.0;
  const Matrix num = student_kernel(Y, &z);
  const auto n = Y.rows();
  const auto d = Y.cols();
  Matrix grad = Matrix::Zero(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* yi = Y.data() + i * d;
    double* gi = grad.data() + i * d;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double* yj = Y.data() + j * d;
      const double mult = 4.0 * (exaggeration * P(i, j) - num(i, j) / z) * num(i, j);
      for (Eigen::Index c = 0; c < d; ++c) gi[c] += mult * (yi[c] - yj[c]);
    }
  }
  return grad;
}

namespace {

struct RunResult {
  Matrix coords;
  double kl = 0.0;
  bool failed = false;
  std::string message;
  std::vector<std::pair<int, double>> trace;
};

RunResult run_descent(const Matrix& P, Matrix Y, const TsneParams& params) {
  RunResult out;
  const auto n = Y.rows();
  const auto d = Y.cols();
  Matrix update = Matrix::Zero(n, d);
  Matrix gains = Matrix::Ones(n, d);

  for (int it = 0; it < params.iterations; ++it) {
    const bool exaggerating = it < params.exaggeration_iterations;
    if (it == params.exaggeration_iterations) {
      update.setZero();
      gains.setOnes();
    }
    const double momentum = exaggerating ? params.initial_momentum : params.final_momentum;
    const Matrix grad = kl_gradient(P, Y, exaggerating ? params.early_exaggeration : 1.0);

    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < d; ++c) {
        const bool sign_flip = (update(i, c) * grad(i, c)) < 0.0;
        gains(i, c) = sign_flip ? gains(i, c) + 0.2 : gains(i, c) * 0.8;
        gains(i, c) = std::max(gains(i, c), params.min_gain);
        update(i, c) = momentum * update(i, c) - params.learning_rate * gains(i, c) * grad(i, c);
        Y(i, c) += update(i, c);
      }
    }

    if ((it + 1) % 50 == 0 && !all_finite(Y)) {
      out.failed = true;
      out.message = "non-finite coordinates at iteration " + std::to_string(it + 1);
      return out;
    }
    if (params.kl_trace_interval > 0 && !exaggerating && (it + 1) % params.kl_trace_interval == 0) {
      out.trace.emplace_back(it + 1, kl_divergence(P, Y));
    }
  }
  if (!all_finite(Y)) {
    out.failed = true;
    out.message = "non-finite coordinates after optimisation";
    return out;
  }
  out.kl = kl_divergence(P, Y);
  if (!std::isfinite(out.kl)) {
    out.failed = true;
    out.message = "non-finite KL divergence";
    return out;
  }
  out.coords = std::move(Y);
  return out;
}

}  // namespace

Embedding tsne(const Matrix& X, const TsneParams& params) {
  const auto n = static_cast<std::size_t>(X.rows());
  params.validate(n);

  Embedding emb;
  emb.params = params;
  const Matrix P = joint_probabilities(X, params.perplexity, &emb.unconverged_rows);

  const int init_dims = std::min<int>(params.dims, static_cast<int>(X.cols()));
  Matrix init = Matrix::Zero(X.rows(), params.dims);
  init.leftCols(init_dims) = pca_project(X, init_dims);
  const double sd0 = std::sqrt((init.col(0).array() - init.col(0).mean()).square().mean());
  if (sd0 > 0.0) init *= kInitScale / sd0;

  std::vector<std::uint64_t> row_hash(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::RowVectorXd row = X.row(static_cast<Eigen::Index>(i)) + Eigen::RowVectorXd::Zero(X.cols());  // folds -0
    row_hash[i] = fnv1a64({reinterpret_cast<const char*>(row.data()), sizeof(double) * static_cast<std::size_t>(row.size())});
  }

  bool have_best = false;
  for (int r = 0; r < params.restarts; ++r) {
    const std::uint64_t seed = params.seed + static_cast<std::uint64_t>(r);
    Matrix Y = init;
    for (Eigen::Index i = 0; i < Y.rows(); ++i) {
      // Jitter depends on the row's values, so identical rows start (and,
      // with identical gradients, stay) at the same point.
      std::mt19937_64 rng(seed ^ row_hash[static_cast<std::size_t>(i)]);
      std::normal_distribution<double> jitter(0.0, kJitterScale);
      for (Eigen::Index c = 0; c < Y.cols(); ++c) Y(i, c) += jitter(rng);
    }

    auto run = run_descent(P, std::move(Y), params);
    emb.restarts.push_back({seed, run.kl, run.failed, run.message});
    if (run.failed) continue;
    if (!have_best || run.kl < emb.kl_final) {
      have_best = true;
      emb.kl_final = run.kl;
      emb.coords = std::move(run.coords);
      emb.seed_used = seed;
      emb.kl_trace = std::move(run.trace);
    }
  }
  if (!have_best) throw NumericalError("tsne: every restart diverged");
  return emb;
}

}  // namespace linefig
