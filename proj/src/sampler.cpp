#include "mvote/sampler.hpp"

#include <random>

namespace mvote {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngSeed RngSeed::substream(std::uint64_t index) const {
  return {seed, splitmix64(stream ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

Rng::Rng(RngSeed seed) {
  std::uint64_t key = splitmix64(seed.seed) ^ splitmix64(seed.stream ^ 0xd1b54a32d192ed03ULL);
  for (auto& word : s_) {
    key = splitmix64(key);
    word = key;
  }
  // xoshiro must not start from the all-zero state.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

MarkovTransition markov_transition_probs(double rate, double gamma) {
  return {rate + gamma * (1.0 - rate), rate * (1.0 - gamma)};
}

double sample_beta(const BetaSpec& spec, Rng& rng) {
  std::gamma_distribution<double> ga(spec.alpha(), 1.0);
  std::gamma_distribution<double> gb(spec.beta(), 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  const double sum = x + y;
  // Both gammas can underflow for tiny shapes; fall back to the mean.
  if (!(sum > 0.0)) return spec.mean();
  return x / sum;
}

void fill_votes_heterogeneous(const BetaSpec& spec, Rng& rng, std::span<std::uint8_t> out) {
  for (auto& v : out) {
    const double own_rate = sample_beta(spec, rng);
    v = rng.bernoulli(own_rate) ? 1 : 0;
  }
}

void fill_votes(const CorrelationModel& model, double rate, Rng& rng, std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (const auto* geo = std::get_if<Geometric>(&model)) {
    const auto [t11, t01] = markov_transition_probs(rate, geo->gamma);
    std::uint8_t prev = rng.bernoulli(rate) ? 1 : 0;
    out[0] = prev;
    for (std::size_t i = 1; i < out.size(); ++i) {
      prev = rng.bernoulli(prev ? t11 : t01) ? 1 : 0;
      out[i] = prev;
    }
    return;
  }
  if (const auto* eq = std::get_if<Equicorrelated>(&model)) {
    if (rng.bernoulli(eq->lambda)) {
      const std::uint8_t shared = rng.bernoulli(rate) ? 1 : 0;
      for (auto& v : out) v = shared;
      return;
    }
  } else if (const auto& ind = std::get<Independent>(model); ind.concentration) {
    fill_votes_heterogeneous(BetaSpec::from_mean_concentration(rate, *ind.concentration), rng, out);
    return;
  }
  for (auto& v : out) v = rng.bernoulli(rate) ? 1 : 0;
}

VoteVector sample_votes(const CorrelationModel& model, int n, double rate, RngSeed seed) {
  VoteVector votes(n);
  Rng rng(seed);
  fill_votes(model, rate, rng, std::span<std::uint8_t>(votes.data(), static_cast<std::size_t>(n)));
  return votes;
}

VoteVector sample_votes_heterogeneous(const BetaSpec& spec, int n, RngSeed seed) {
  VoteVector votes(n);
  Rng rng(seed);
  fill_votes_heterogeneous(spec, rng, std::span<std::uint8_t>(votes.data(), static_cast<std::size_t>(n)));
  return votes;
}

int majority_vote(std::span<const std::uint8_t> votes) {
  std::size_t ones = 0;
  for (auto v : votes) ones += v;
  return 2 * ones > votes.size() ? 1 : 0;
}

}  // namespace mvote
