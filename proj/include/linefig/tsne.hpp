#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linefig/matrix.hpp"

namespace linefig {

struct TsneParams {
  int dims = 2;
  double perplexity = 32.0;
  double learning_rate = 50.0;
  int iterations = 20000;
  int restarts = 4;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  double min_gain = 0.01;
  std::uint64_t seed = 0;
  /// Record the KL divergence every this many iterations after the
  /// exaggeration phase (0 disables the trace).
  int kl_trace_interval = 0;

  /// Throws ValidationError unless perplexity < (n - 1) / 3 and the other
  /// fields are in range.
  void validate(std::size_t n) const;
};

struct RestartReport {
  std::uint64_t seed = 0;
  double kl = 0.0;
  bool failed = false;
  std::string message;
};

struct Embedding {
  Matrix coords;  // n x dims
  double kl_final = 0.0;
  TsneParams params;
  std::uint64_t seed_used = 0;
  std::vector<RestartReport> restarts;
  std::vector<std::pair<int, double>> kl_trace;  // (iteration, KL) of the chosen restart
  int unconverged_rows = 0;                      // perplexity searches that hit the iteration cap
};

struct PerplexityResult {
  std::vector<double> probabilities;
  double entropy = 0.0;  // nats
  double beta = 1.0;     // 1 / (2 sigma^2)
  int iterations = 0;
  bool converged = false;
};

/// Conditional probabilities p_{j|i} for one row of squared distances (self
/// excluded), by bisection on the Gaussian precision until the entropy equals
/// log(perplexity).
PerplexityResult calibrate_perplexity(std::span<const double> squared_distances, double perplexity,
                                      double tolerance = 1e-5, int max_iterations = 100);

/// Symmetric joint probabilities (p_{j|i} + p_{i|j}) / 2n with every
/// off-diagonal entry at least 1e-12 and total mass 1.
Matrix joint_probabilities(const Matrix& X, double perplexity, int* unconverged_rows = nullptr);

/// KL(P || Q) for the Student-t (one degree of freedom) similarities of Y.
double kl_divergence(const Matrix& P, const Matrix& Y);

/// Exact gradient of KL(exaggeration * P || Q) with respect to Y.
Matrix kl_gradient(const Matrix& P, const Matrix& Y, double exaggeration = 1.0);

/// Exact t-SNE with PCA initialisation; returns the restart with the lowest
/// final KL divergence. Throws NumericalError if every restart diverges.
Embedding tsne(const Matrix& X, const TsneParams& params);

/// Venna-Kaski trustworthiness of embedding Y for original data X with k
/// neighbours; ties in distance are broken by row index.
double trustworthiness(const Matrix& X, const Matrix& Y, int k);

}  // namespace linefig
