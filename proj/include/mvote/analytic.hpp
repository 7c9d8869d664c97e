#pragma once

// Closed-form quantities of the majority-vote ensemble: the individual error,
// vote-sum variances, the normal-approximation error estimate, and the
// n -> infinity limits with their phase structure.

#include <cstdint>

#include "mvote/model.hpp"

namespace mvote {

/// Standard normal CDF. Saturates to exactly 0 or 1 beyond |x| = 40.
double std_normal_cdf(double x);

/// (1 - p) * pi + q * (1 - pi)
double mean_individual_error(const RatePair& rates, const Prior& prior);

/// Exact Var(g_n | class) for a class-conditional vote rate.
///   independent:    n r (1-r)
///   geometric:      n r (1-r) [1 + 2 sum_{j<n} (1 - j/n) gamma^j], closed form
///   equicorrelated: n^2 lambda r (1-r) + n (1 - lambda) r (1-r)
double sum_variance(const CorrelationModel& model, int n, double rate);

/// Same as sum_variance, but the geometric series is summed term by term.
double sum_variance_direct(const CorrelationModel& model, int n, double rate);

/// lim Var(g_n)/n; infinite for the equicorrelated model.
struct SigmaSq {
  bool finite;
  double value;  // meaningful only when finite

  static SigmaSq Finite(double v) { return {true, v}; }
  static SigmaSq Infinite() { return {false, 0.0}; }
};

SigmaSq asymptotic_sigma_sq(const CorrelationModel& model, double rate);

/// An error estimate together with whether it relied on substituting the
/// exact finite-n standard deviation for an infinite sigma * sqrt(n).
struct ErrorEstimate {
  double value;
  bool abusive;
};

/// Normal approximation of Err(n) with exact class-conditional variances:
///   Phi((n/2 - n p)/s_p) pi + [1 - Phi((n/2 - n q)/s_q)] (1 - pi).
ErrorEstimate estimated_error(const EnsembleConfig& cfg);

/// n -> infinity version. Finite-sigma models give the table limit; the
/// equicorrelated model gives the n-free expression with
/// s_r = n sqrt(lambda r (1-r)).
ErrorEstimate estimated_error_asymptotic(const RatePair& rates, const Prior& prior,
                                         const CorrelationModel& model);

/// estimated_error(cfg) - mean_individual_error. Negative means the vote helps.
double delta(const EnsembleConfig& cfg);

/// Position of a rate relative to 1/2, by exact comparison.
enum class Side : std::uint8_t { Below, Half, Above };

Side side_of_half(double x);

/// The nine (p-side, q-side) cells of the phase diagram.
struct Region {
  Side p;
  Side q;
  bool operator==(const Region&) const = default;
};

Region region_of(const RatePair& rates);

/// lim Err-hat(n) for finite-sigma models, selected by region.
double limiting_error(const RatePair& rates, const Prior& prior);

/// pi p - (1 - pi) q
double a_term(const RatePair& rates, const Prior& prior);

/// Constant added to a_term in each cell of the limiting-delta table.
double limiting_delta_offset(Region region, const Prior& prior);

enum class PhaseSign : std::uint8_t { Beneficial, Harmful, Neutral };

const char* to_string(PhaseSign sign);
char phase_symbol(PhaseSign sign);

PhaseSign sign_of(double delta_inf);

struct PhaseVerdict {
  double delta_inf;
  PhaseSign sign;
  Region region;
};

/// limiting_error - mean_individual_error with its sign and region.
PhaseVerdict limiting_delta(const RatePair& rates, const Prior& prior);

}  // namespace mvote
