#pragma once

// Seeded Monte Carlo estimation of the majority-vote error and of the
// empirical correlation structure of the vote samplers. Results depend only
// on (inputs, reps, seed), never on the number of worker threads.

#include <Eigen/Dense>
#include <cstdint>

#include "mvote/model.hpp"
#include "mvote/sampler.hpp"

namespace mvote {

/// Replications per chunk; chunk c draws from seed.substream(c).
inline constexpr std::int64_t kMcChunkSize = 4096;

struct McEstimate {
  double value;
  double std_error;  // sqrt(value (1 - value) / reps)
  std::int64_t reps;
  RngSeed seed;
};

/// Draws y ~ Bernoulli(pi), a vote vector at rate p (y = 1) or q (y = 0),
/// and averages the majority-vote misclassifications. Requires reps >= 100.
McEstimate mc_error(const EnsembleConfig& cfg, std::int64_t reps, RngSeed seed, int threads = 1);

/// As mc_error, conditioned on one class: estimates Pr(g_n <= n/2 | y = 1)
/// for label 1 or Pr(g_n > n/2 | y = 0) for label 0.
McEstimate mc_conditional_error(const EnsembleConfig& cfg, int label, std::int64_t reps, RngSeed seed,
                                int threads = 1);

struct CorrelationSummary {
  Eigen::MatrixXd correlation;  // n x n sample Pearson correlations
  Eigen::VectorXd position_mean;
  /// lag_mean[k] is the mean of correlation(i, i + k); lag_mean[0] = 1.
  Eigen::VectorXd lag_mean;
  double off_diagonal_mean;
  std::int64_t reps;
};

/// Sample correlations of the vote positions over `reps` independent vectors.
/// Requires reps >= 10^4; throws DegenerateVariance when some position never
/// varies.
CorrelationSummary mc_correlation_matrix(const CorrelationModel& model, int n, double rate, std::int64_t reps,
                                         RngSeed seed, int threads = 1);

}  // namespace mvote
