#include "mvote/analytic.hpp"

#include <cmath>
#include <numbers>

namespace mvote {

double std_normal_cdf(double x) {
  if (x > 40.0) return 1.0;
  if (x < -40.0) return 0.0;
  // erfc keeps full relative precision in the lower tail, where 1 - erf
  // would cancel.
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double mean_individual_error(const RatePair& rates, const Prior& prior) {
  const double pi = prior.pi();
  return (1.0 - rates.p()) * pi + rates.q() * (1.0 - pi);
}

namespace {

// sum_{j=1}^{n-1} (1 - j/n) gamma^j
double geometric_weight_closed(int n, double gamma) {
  const double nn = static_cast<double>(n);
  const double ratio = gamma / (1.0 - gamma);
  // 1 - gamma^n without cancellation for gamma near 0.
  const double one_minus_pow = -std::expm1(nn * std::log(gamma));
  return ratio * (1.0 - one_minus_pow / (nn * (1.0 - gamma)));
}

double geometric_weight_direct(int n, double gamma) {
  double sum = 0.0;
  double power = 1.0;
  const double nn = static_cast<double>(n);
  for (int j = 1; j < n; ++j) {
    power *= gamma;
    sum += (1.0 - j / nn) * power;
  }
  return sum;
}

template <typename GeometricWeight>
double sum_variance_impl(const CorrelationModel& model, int n, double rate, GeometricWeight weight) {
  const double nn = static_cast<double>(n);
  const double bernoulli = rate * (1.0 - rate);
  if (const auto* geo = std::get_if<Geometric>(&model))
    return nn * bernoulli * (1.0 + 2.0 * weight(n, geo->gamma));
  if (const auto* eq = std::get_if<Equicorrelated>(&model))
    return nn * nn * eq->lambda * bernoulli + nn * (1.0 - eq->lambda) * bernoulli;
  return nn * bernoulli;
}

}  // namespace

double sum_variance(const CorrelationModel& model, int n, double rate) {
  return sum_variance_impl(model, n, rate, geometric_weight_closed);
}

double sum_variance_direct(const CorrelationModel& model, int n, double rate) {
  return sum_variance_impl(model, n, rate, geometric_weight_direct);
}

SigmaSq asymptotic_sigma_sq(const CorrelationModel& model, double rate) {
  const double bernoulli = rate * (1.0 - rate);
  if (const auto* geo = std::get_if<Geometric>(&model))
    return SigmaSq::Finite(bernoulli * (1.0 + geo->gamma) / (1.0 - geo->gamma));
  if (std::holds_alternative<Equicorrelated>(model)) return SigmaSq::Infinite();
  return SigmaSq::Finite(bernoulli);
}

ErrorEstimate estimated_error(const EnsembleConfig& cfg) {
  const double nn = static_cast<double>(cfg.n());
  const double p = cfg.rates().p();
  const double q = cfg.rates().q();
  const double pi = cfg.prior().pi();
  const double sp = std::sqrt(sum_variance(cfg.model(), cfg.n(), p));
  const double sq = std::sqrt(sum_variance(cfg.model(), cfg.n(), q));
  const double zp = nn * (0.5 - p) / sp;
  const double zq = nn * (0.5 - q) / sq;
  // 1 - Phi(z) is evaluated as Phi(-z) to keep the upper tail accurate.
  const double value = std_normal_cdf(zp) * pi + std_normal_cdf(-zq) * (1.0 - pi);
  return {value, std::holds_alternative<Equicorrelated>(cfg.model())};
}

ErrorEstimate estimated_error_asymptotic(const RatePair& rates, const Prior& prior,
                                         const CorrelationModel& model) {
  const auto* eq = std::get_if<Equicorrelated>(&model);
  if (eq == nullptr) return {limiting_error(rates, prior), false};
  const double p = rates.p();
  const double q = rates.q();
  const double pi = prior.pi();
  const double zp = (0.5 - p) / std::sqrt(eq->lambda * p * (1.0 - p));
  const double zq = (0.5 - q) / std::sqrt(eq->lambda * q * (1.0 - q));
  return {std_normal_cdf(zp) * pi + std_normal_cdf(-zq) * (1.0 - pi), true};
}

double delta(const EnsembleConfig& cfg) {
  return estimated_error(cfg).value - mean_individual_error(cfg.rates(), cfg.prior());
}

Side side_of_half(double x) {
  if (x < 0.5) return Side::Below;
  if (x > 0.5) return Side::Above;
  return Side::Half;
}

Region region_of(const RatePair& rates) { return {side_of_half(rates.p()), side_of_half(rates.q())}; }

double limiting_error(const RatePair& rates, const Prior& prior) {
  const double pi = prior.pi();
  const Region r = region_of(rates);
  switch (r.q) {
    case Side::Above:
      switch (r.p) {
        case Side::Below: return 1.0;
        case Side::Half: return 1.0 - pi / 2.0;
        case Side::Above: return 1.0 - pi;
      }
      break;
    case Side::Half:
      switch (r.p) {
        case Side::Below: return (1.0 + pi) / 2.0;
        case Side::Half: return 0.5;
        case Side::Above: return (1.0 - pi) / 2.0;
      }
      break;
    case Side::Below:
      switch (r.p) {
        case Side::Below: return pi;
        case Side::Half: return pi / 2.0;
        case Side::Above: return 0.0;
      }
      break;
  }
  return 0.5;
}

double a_term(const RatePair& rates, const Prior& prior) {
  const double pi = prior.pi();
  return pi * rates.p() - (1.0 - pi) * rates.q();
}

double limiting_delta_offset(Region region, const Prior& prior) {
  const double pi = prior.pi();
  switch (region.q) {
    case Side::Above:
      switch (region.p) {
        case Side::Below: return 1.0 - pi;
        case Side::Half: return 1.0 - 1.5 * pi;
        case Side::Above: return 1.0 - 2.0 * pi;
      }
      break;
    case Side::Half:
      switch (region.p) {
        case Side::Below: return 0.5 - pi / 2.0;
        case Side::Half: return 0.5 - pi;
        case Side::Above: return 0.5 - 1.5 * pi;
      }
      break;
    case Side::Below:
      switch (region.p) {
        case Side::Below: return 0.0;
        case Side::Half: return -pi / 2.0;
        case Side::Above: return -pi;
      }
      break;
  }
  return 0.0;
}

const char* to_string(PhaseSign sign) {
  switch (sign) {
    case PhaseSign::Beneficial: return "beneficial";
    case PhaseSign::Harmful: return "harmful";
    case PhaseSign::Neutral: return "neutral";
  }
  return "neutral";
}

char phase_symbol(PhaseSign sign) {
  switch (sign) {
    case PhaseSign::Beneficial: return '-';
    case PhaseSign::Harmful: return '+';
    case PhaseSign::Neutral: return '0';
  }
  return '0';
}

PhaseSign sign_of(double delta_inf) {
  if (delta_inf < 0.0) return PhaseSign::Beneficial;
  if (delta_inf > 0.0) return PhaseSign::Harmful;
  return PhaseSign::Neutral;
}

PhaseVerdict limiting_delta(const RatePair& rates, const Prior& prior) {
  // err = pi - A, so this is limiting_error - err rearranged. A vanishes
  // exactly on p = q at pi = 1/2, which keeps the neutral diagonal at 0.
  const double d = a_term(rates, prior) + (limiting_error(rates, prior) - prior.pi());
  return {d, sign_of(d), region_of(rates)};
}

}  // namespace mvote
