#include "mvote/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mvote {

namespace {

bool in_open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

std::string fmt_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RateOutOfRange: return "RateOutOfRange";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::BadSize: return "BadSize";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::SingleClassData: return "SingleClassData";
    case ErrorCode::NonBinaryEntry: return "NonBinaryEntry";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

RatePair::RatePair(double p, double q) : p_(p), q_(q) {
  if (!in_open_unit(p))
    throw Error(ErrorCode::RateOutOfRange, "p = " + fmt_value(p) + " must lie in the open interval (0,1)");
  if (!in_open_unit(q))
    throw Error(ErrorCode::RateOutOfRange, "q = " + fmt_value(q) + " must lie in the open interval (0,1)");
}

Prior::Prior(double pi) : pi_(pi) {
  if (!in_open_unit(pi))
    throw Error(ErrorCode::RateOutOfRange, "pi = " + fmt_value(pi) + " must lie in the open interval (0,1)");
}

BetaSpec::BetaSpec(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(std::isfinite(alpha) && alpha > 0.0) || !(std::isfinite(beta) && beta > 0.0))
    throw Error(ErrorCode::BadParameter, "beta shapes (" + fmt_value(alpha) + ", " + fmt_value(beta) +
                                             ") must both be positive");
}

BetaSpec BetaSpec::from_mean_concentration(double mean, double concentration) {
  if (!in_open_unit(mean))
    throw Error(ErrorCode::RateOutOfRange, "beta mean " + fmt_value(mean) + " must lie in (0,1)");
  if (!(std::isfinite(concentration) && concentration > 0.0))
    throw Error(ErrorCode::BadParameter,
                "beta-concentration = " + fmt_value(concentration) + " must be positive");
  BetaSpec spec(mean * concentration, (1.0 - mean) * concentration);
  if (std::abs(spec.mean() - mean) > 1e-12)
    throw Error(ErrorCode::BadParameter, "beta mean not representable at concentration " + fmt_value(concentration));
  return spec;
}

void check_model(const CorrelationModel& model) {
  if (const auto* ind = std::get_if<Independent>(&model)) {
    if (ind->concentration && !(std::isfinite(*ind->concentration) && *ind->concentration > 0.0))
      throw Error(ErrorCode::BadParameter,
                  "beta-concentration = " + fmt_value(*ind->concentration) + " must be positive");
  } else if (const auto* geo = std::get_if<Geometric>(&model)) {
    if (!in_open_unit(geo->gamma))
      throw Error(ErrorCode::BadParameter, "gamma = " + fmt_value(geo->gamma) + " must lie in (0,1)");
  } else if (const auto* eq = std::get_if<Equicorrelated>(&model)) {
    if (!in_open_unit(eq->lambda))
      throw Error(ErrorCode::BadParameter, "lambda = " + fmt_value(eq->lambda) + " must lie in (0,1)");
  }
}

std::string model_name(const CorrelationModel& model) {
  switch (model.index()) {
    case 0: return "independent";
    case 1: return "geometric";
    default: return "equicorrelated";
  }
}

EnsembleConfig::EnsembleConfig(int n, RatePair rates, Prior prior, CorrelationModel model)
    : n_(n), rates_(rates), prior_(prior), model_(std::move(model)) {
  if (n < 1) throw Error(ErrorCode::BadSize, "n = " + std::to_string(n) + " must be at least 1");
  check_model(model_);
  if (const auto* ind = std::get_if<Independent>(&model_); ind && ind->concentration) {
    // Both class-conditional Beta laws must be constructible.
    BetaSpec::from_mean_concentration(rates_.p(), *ind->concentration);
    BetaSpec::from_mean_concentration(rates_.q(), *ind->concentration);
  }
}

RawEnsembleConfig EnsembleConfig::raw() const {
  return RawEnsembleConfig{n_, rates_.p(), rates_.q(), prior_.pi(), model_};
}

bool EnsembleConfig::operator==(const EnsembleConfig& other) const {
  return n_ == other.n_ && rates_.p() == other.rates_.p() && rates_.q() == other.rates_.q() &&
         prior_.pi() == other.prior_.pi() && model_ == other.model_;
}

EnsembleConfig validate_config(const RawEnsembleConfig& raw) {
  if (raw.n < 1 || raw.n > std::numeric_limits<int>::max())
    throw Error(ErrorCode::BadSize, "n = " + std::to_string(raw.n) + " must be a positive integer");
  RatePair rates(raw.p, raw.q);
  Prior prior(raw.pi);
  return EnsembleConfig(static_cast<int>(raw.n), rates, prior, raw.model);
}

GridSpec::GridSpec(const RawGridSpec& raw) : raw_(raw) {
  auto check_axis = [](const char* name, double lo, double hi, int res) {
    if (!in_open_unit(lo) || !in_open_unit(hi))
      throw Error(ErrorCode::RateOutOfRange,
                  std::string(name) + " range [" + fmt_value(lo) + ", " + fmt_value(hi) + "] must lie inside (0,1)");
    if (lo == hi) {
      if (res != 1)
        throw Error(ErrorCode::BadSize, std::string(name) + " range is a single point; resolution must be 1");
      return;
    }
    if (lo > hi)
      throw Error(ErrorCode::BadParameter, std::string(name) + "_min must be below " + name + "_max");
    if (res < 2) throw Error(ErrorCode::BadSize, std::string(name) + " resolution must be at least 2");
  };
  check_axis("p", raw.p_min, raw.p_max, raw.p_resolution);
  check_axis("q", raw.q_min, raw.q_max, raw.q_resolution);
  if (raw.n && (*raw.n < 1 || *raw.n > std::numeric_limits<int>::max()))
    throw Error(ErrorCode::BadSize, "n = " + std::to_string(*raw.n) + " must be a positive integer");
  (void)Prior(raw.pi);
  check_model(raw.model);
}

std::optional<int> GridSpec::n() const {
  if (!raw_.n) return std::nullopt;
  return static_cast<int>(*raw_.n);
}

double GridSpec::axis_point(double lo, double hi, int resolution, int index) {
  if (resolution == 1) return lo;
  const double x = lo + (hi - lo) * static_cast<double>(index) / static_cast<double>(resolution - 1);
  return std::round(x * 1e12) / 1e12;
}

int resolution_for_step(double lo, double hi, double step) {
  if (!(std::isfinite(step) && step > 0.0))
    throw Error(ErrorCode::BadParameter, "step = " + fmt_value(step) + " must be positive");
  if (lo == hi) return 1;
  const double intervals = (hi - lo) / step;
  const double rounded = std::round(intervals);
  if (std::abs(intervals - rounded) > 1e-9 * std::max(1.0, rounded))
    throw Error(ErrorCode::BadParameter, "step = " + fmt_value(step) + " does not divide the axis range evenly");
  return static_cast<int>(rounded) + 1;
}

}  // namespace mvote
