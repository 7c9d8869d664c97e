#pragma once

// Domain types shared by every module: rates, prior, correlation structure,
// ensemble and grid configurations. Every type validates on construction, so
// an object that exists is an object that satisfies its invariants.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace mvote {

enum class ErrorCode : std::uint8_t {
  RateOutOfRange,
  BadParameter,
  BadSize,
  SizeGuardExceeded,
  DegenerateVariance,
  SingleClassData,
  NonBinaryEntry,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Average true/false positive rates of the ensemble, both in (0,1).
class RatePair {
 public:
  RatePair(double p, double q);
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  double p_;
  double q_;
};

/// Pr(y = 1), in (0,1).
class Prior {
 public:
  explicit Prior(double pi);
  double pi() const noexcept { return pi_; }

 private:
  double pi_;
};

/// Beta(alpha, beta) law of per-classifier rates.
class BetaSpec {
 public:
  BetaSpec(double alpha, double beta);
  /// alpha = mean * c, beta = (1 - mean) * c.
  static BetaSpec from_mean_concentration(double mean, double concentration);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double mean() const noexcept { return alpha_ / (alpha_ + beta_); }

 private:
  double alpha_;
  double beta_;
};

/// Conditionally independent votes. With a concentration set, each
/// classifier's own rate is drawn from a Beta law centred on the class rate.
struct Independent {
  std::optional<double> concentration;
  bool operator==(const Independent&) const = default;
};

/// Corr(f_i, f_j) = gamma^|i-j|.
struct Geometric {
  double gamma;
  bool operator==(const Geometric&) const = default;
};

/// Corr(f_i, f_j) = lambda for every i != j.
struct Equicorrelated {
  double lambda;
  bool operator==(const Equicorrelated&) const = default;
};

using CorrelationModel = std::variant<Independent, Geometric, Equicorrelated>;

/// Throws BadParameter unless gamma, lambda and concentration are in range.
void check_model(const CorrelationModel& model);

/// "independent", "geometric" or "equicorrelated".
std::string model_name(const CorrelationModel& model);

inline bool is_heterogeneous(const CorrelationModel& model) {
  const auto* ind = std::get_if<Independent>(&model);
  return ind != nullptr && ind->concentration.has_value();
}

/// Unvalidated configuration as read from flags or a JSON document.
struct RawEnsembleConfig {
  long long n = 1;
  double p = 0.5;
  double q = 0.5;
  double pi = 0.5;
  CorrelationModel model = Independent{};
};

class EnsembleConfig {
 public:
  EnsembleConfig(int n, RatePair rates, Prior prior, CorrelationModel model);

  int n() const noexcept { return n_; }
  const RatePair& rates() const noexcept { return rates_; }
  const Prior& prior() const noexcept { return prior_; }
  const CorrelationModel& model() const noexcept { return model_; }

  /// Class-conditional vote rate: p for class 1, q for class 0.
  double rate(int label) const noexcept { return label == 1 ? rates_.p() : rates_.q(); }

  RawEnsembleConfig raw() const;
  bool operator==(const EnsembleConfig& other) const;

 private:
  int n_;
  RatePair rates_;
  Prior prior_;
  CorrelationModel model_;
};

/// Checks n first (BadSize), then rates (RateOutOfRange), prior, then the
/// correlation parameters (BadParameter).
EnsembleConfig validate_config(const RawEnsembleConfig& raw);

/// Returns the config unchanged; it is valid by construction.
inline const EnsembleConfig& validate_config(const EnsembleConfig& cfg) { return cfg; }

/// Axis-aligned grid over the open unit square. A nullopt ensemble size means
/// the n -> infinity limit.
struct RawGridSpec {
  double p_min = 0.01;
  double p_max = 0.99;
  double q_min = 0.01;
  double q_max = 0.99;
  int p_resolution = 99;
  int q_resolution = 99;
  std::optional<long long> n;
  double pi = 0.5;
  CorrelationModel model = Independent{};
  bool include_half = false;
};

class GridSpec {
 public:
  explicit GridSpec(const RawGridSpec& raw);

  const RawGridSpec& raw() const noexcept { return raw_; }
  Prior prior() const { return Prior(raw_.pi); }
  const CorrelationModel& model() const noexcept { return raw_.model; }
  std::optional<int> n() const;

  /// Axis coordinates, rounded to 12 decimals so that decimal grid points
  /// such as 0.5 are hit exactly.
  static double axis_point(double lo, double hi, int resolution, int index);

 private:
  RawGridSpec raw_;
};

/// Resolution covering [lo, hi] in steps of `step` (both ends included).
int resolution_for_step(double lo, double hi, double step);

}  // namespace mvote
