#include "mvote/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "mvote/sampler.hpp"

namespace mvote {

double VotePmf::mean() const {
  const Eigen::VectorXd k = Eigen::VectorXd::LinSpaced(n + 1, 0.0, static_cast<double>(n));
  return k.dot(mass);
}

double VotePmf::variance() const {
  const double mu = mean();
  const Eigen::ArrayXd centred = Eigen::ArrayXd::LinSpaced(n + 1, 0.0, static_cast<double>(n)) - mu;
  return (centred.square() * mass.array()).sum();
}

double VotePmf::cdf(int k) const {
  if (k < 0) return 0.0;
  if (k >= n) return mass.sum();
  return mass.head(k + 1).sum();
}

VotePmf binomial_pmf(int n, double rate) {
  // Start at the mode with unit mass and walk outward with the ratio
  // recurrence; every step shrinks the value so nothing overflows.
  VotePmf pmf{n, Eigen::VectorXd::Zero(n + 1)};
  const double odds = rate / (1.0 - rate);
  int mode = static_cast<int>(std::floor((n + 1) * rate));
  if (mode > n) mode = n;
  pmf.mass[mode] = 1.0;
  for (int k = mode; k < n; ++k)
    pmf.mass[k + 1] = pmf.mass[k] * (static_cast<double>(n - k) / (k + 1)) * odds;
  for (int k = mode; k > 0; --k)
    pmf.mass[k - 1] = pmf.mass[k] * (static_cast<double>(k) / (n - k + 1)) / odds;
  pmf.mass /= pmf.mass.sum();
  return pmf;
}

namespace {

VotePmf markov_sum_pmf(int n, double rate, double gamma) {
  const auto [t11, t01] = markov_transition_probs(rate, gamma);
  const double t10 = 1.0 - t11;
  const double t00 = 1.0 - t01;
  // Rolling layers indexed by count; one layer per last vote value.
  Eigen::VectorXd last0 = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd last1 = Eigen::VectorXd::Zero(n + 1);
  last0[0] = 1.0 - rate;
  last1[1] = rate;
  Eigen::VectorXd next0(n + 1);
  Eigen::VectorXd next1(n + 1);
  for (int pos = 1; pos < n; ++pos) {
    next0.setZero();
    next1.setZero();
    // After pos votes the count is at most pos.
    for (int k = 0; k <= pos; ++k) {
      const double from0 = last0[k];
      const double from1 = last1[k];
      next0[k] += from0 * t00 + from1 * t10;
      next1[k + 1] += from0 * t01 + from1 * t11;
    }
    last0.swap(next0);
    last1.swap(next1);
  }
  return VotePmf{n, last0 + last1};
}

}  // namespace

VotePmf exact_vote_pmf(const CorrelationModel& model, int n, double rate) {
  if (n < 1) throw Error(ErrorCode::BadSize, "n = " + std::to_string(n) + " must be at least 1");
  if (n > kExactSizeGuard)
    throw Error(ErrorCode::SizeGuardExceeded,
                "n = " + std::to_string(n) + " exceeds the exact-pmf guard of " + std::to_string(kExactSizeGuard));
  if (!(rate > 0.0 && rate < 1.0)) throw Error(ErrorCode::RateOutOfRange, "rate must lie in (0,1)");
  check_model(model);

  if (const auto* geo = std::get_if<Geometric>(&model)) return markov_sum_pmf(n, rate, geo->gamma);

  VotePmf pmf = binomial_pmf(n, rate);
  if (const auto* eq = std::get_if<Equicorrelated>(&model)) {
    pmf.mass *= 1.0 - eq->lambda;
    pmf.mass[0] += eq->lambda * (1.0 - rate);
    pmf.mass[n] += eq->lambda * rate;
  }
  return pmf;
}

double exact_conditional_error(const EnsembleConfig& cfg, int label) {
  const VotePmf pmf = exact_vote_pmf(cfg.model(), cfg.n(), cfg.rate(label));
  // Strict majority: class 1 needs g_n > n/2, i.e. g_n >= floor(n/2) + 1.
  const int half = cfg.n() / 2;
  if (label == 1) return pmf.mass.head(half + 1).sum();
  return pmf.mass.tail(cfg.n() - half).sum();
}

double exact_error(const EnsembleConfig& cfg) {
  const double pi = cfg.prior().pi();
  return exact_conditional_error(cfg, 1) * pi + exact_conditional_error(cfg, 0) * (1.0 - pi);
}

namespace {

// Probability of one specific vote vector (bit i = vote of classifier i).
double vector_probability(const CorrelationModel& model, int n, double rate, std::uint32_t bits) {
  auto vote = [bits](int i) { return static_cast<int>((bits >> i) & 1U); };
  auto independent = [&] {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) prob *= vote(i) ? rate : 1.0 - rate;
    return prob;
  };
  if (const auto* geo = std::get_if<Geometric>(&model)) {
    const double t11 = rate + geo->gamma * (1.0 - rate);
    const double t01 = rate * (1.0 - geo->gamma);
    double prob = vote(0) ? rate : 1.0 - rate;
    for (int i = 1; i < n; ++i) {
      const double up = vote(i - 1) ? t11 : t01;
      prob *= vote(i) ? up : 1.0 - up;
    }
    return prob;
  }
  if (const auto* eq = std::get_if<Equicorrelated>(&model)) {
    const std::uint32_t all = n == 32 ? ~0U : ((1U << n) - 1U);
    double shared = 0.0;
    if (bits == all) shared = rate;
    if (bits == 0) shared += 1.0 - rate;
    return eq->lambda * shared + (1.0 - eq->lambda) * independent();
  }
  return independent();
}

}  // namespace

double brute_force_error(const EnsembleConfig& cfg) {
  const int n = cfg.n();
  if (n > kBruteForceGuard)
    throw Error(ErrorCode::SizeGuardExceeded,
                "n = " + std::to_string(n) + " exceeds the enumeration guard of " + std::to_string(kBruteForceGuard));
  double wrong1 = 0.0;
  double wrong0 = 0.0;
  const std::uint32_t count = 1U << n;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    const int ones = std::popcount(bits);
    const bool says_one = 2 * ones > n;
    if (!says_one) wrong1 += vector_probability(cfg.model(), n, cfg.rates().p(), bits);
    if (says_one) wrong0 += vector_probability(cfg.model(), n, cfg.rates().q(), bits);
  }
  const double pi = cfg.prior().pi();
  return wrong1 * pi + wrong0 * (1.0 - pi);
}

}  // namespace mvote
