#pragma once

// Empirical diagnosis of a labelled matrix of binary predictions: estimated
// rates and correlations, the observed majority-vote error, and the limiting
// phase verdict at the estimated rates.

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mvote/analytic.hpp"
#include "mvote/model.hpp"
#include "mvote/sampler.hpp"

namespace mvote {

using BinaryMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using LabelVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

/// N labelled samples, m classifiers. At least two samples, both classes
/// present, every entry 0 or 1.
class PredictionMatrix {
 public:
  PredictionMatrix(LabelVector labels, BinaryMatrix votes);

  const LabelVector& labels() const noexcept { return labels_; }
  const BinaryMatrix& votes() const noexcept { return votes_; }
  Eigen::Index samples() const noexcept { return votes_.rows(); }
  Eigen::Index classifiers() const noexcept { return votes_.cols(); }

 private:
  LabelVector labels_;
  BinaryMatrix votes_;
};

/// Parses `y,f1,...,fm` CSV with a header row.
PredictionMatrix read_prediction_csv(std::istream& in);
void write_prediction_csv(std::ostream& out, const PredictionMatrix& matrix);

/// Draws N labelled rows from the ensemble configuration: y ~ Bernoulli(pi),
/// then one vote vector at the class rate. Row i uses seed.substream(i).
PredictionMatrix synthesize_predictions(const EnsembleConfig& cfg, int samples, RngSeed seed);

struct ClassStats {
  Eigen::Index samples = 0;
  double rate = 0.0;      // mean vote, averaged over classifiers
  double std_error = 0.0; // standard error of `rate` across samples
  Eigen::VectorXd per_classifier;
  std::optional<double> mean_correlation;  // over pairs with nonzero variance
  std::optional<double> lag1_correlation;  // adjacent pairs; ordered mode only
};

struct DiagnosisReport {
  ClassStats positive;  // y = 1, rates are TPRs
  ClassStats negative;  // y = 0, rates are FPRs
  double p_hat = 0.0;
  double q_hat = 0.0;
  double prior = 0.0;
  bool prior_estimated = true;
  double err_hat_individual = 0.0;  // (1 - p_hat) pi + q_hat (1 - pi)
  double err_majority = 0.0;
  double err_majority_se = 0.0;
  double verdict_p = 0.0;  // rates the verdict was evaluated at (after clamping)
  double verdict_q = 0.0;
  PhaseVerdict verdict{};
  std::vector<std::string> warnings;
};

inline constexpr double kBoundaryClamp = 1e-9;
inline constexpr double kHighCorrelation = 0.5;

/// `ordered` additionally reports the adjacent-classifier correlation.
DiagnosisReport diagnose(const PredictionMatrix& matrix, std::optional<Prior> prior_override = std::nullopt,
                         bool ordered = false);

void write_report_text(std::ostream& out, const DiagnosisReport& report);

}  // namespace mvote
