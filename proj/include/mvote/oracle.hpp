#pragma once

// Exact finite-n distribution of the vote sum g_n and the exact majority-vote
// error, for each correlation construction.

#include <Eigen/Dense>

#include "mvote/model.hpp"

namespace mvote {

/// Largest ensemble size accepted by the exact pmf (the geometric DP is
/// quadratic in n).
inline constexpr int kExactSizeGuard = 100000;

/// Largest ensemble size accepted by 2^n enumeration.
inline constexpr int kBruteForceGuard = 20;

/// Probability mass of g_n on {0, ..., n}.
struct VotePmf {
  int n = 0;
  Eigen::VectorXd mass;

  double total() const { return mass.sum(); }
  double mean() const;
  double variance() const;
  /// P(g_n <= k)
  double cdf(int k) const;
};

VotePmf binomial_pmf(int n, double rate);

/// Vote-sum pmf conditioned on one class at marginal vote rate `rate`.
///   independent:    Binomial(n, r); heterogeneous Beta rates leave each vote
///                   Bernoulli(r) and independent, so this is unchanged.
///   geometric:      sum of a stationary two-state Markov chain with
///                   t11 = r + gamma (1-r), t01 = r (1-gamma).
///   equicorrelated: lambda [r delta_n + (1-r) delta_0] + (1-lambda) Binomial(n, r).
VotePmf exact_vote_pmf(const CorrelationModel& model, int n, double rate);

/// Pr(g_n <= n/2 | y = 1) for label 1 or Pr(g_n > n/2 | y = 0) for label 0.
double exact_conditional_error(const EnsembleConfig& cfg, int label);

/// Err(n) = Pr(g_n <= n/2 | y=1) pi + Pr(g_n > n/2 | y=0) (1 - pi).
double exact_error(const EnsembleConfig& cfg);

/// Err(n) by enumerating all 2^n vote vectors under the generative
/// construction of the model. Independent of the pmf code paths.
double brute_force_error(const EnsembleConfig& cfg);

}  // namespace mvote
