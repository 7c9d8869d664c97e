#pragma once

// Random generation of class-conditional vote vectors and the majority-vote
// decision rule.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <limits>
#include <span>

#include "mvote/model.hpp"

namespace mvote {

/// (seed, stream) determines every downstream random draw.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Child stream for one unit of work (a Monte Carlo chunk, a matrix row).
  /// Children of distinct indices are distinct streams of the same seed.
  RngSeed substream(std::uint64_t index) const;

  bool operator==(const RngSeed&) const = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// xoshiro256** keyed by an RngSeed. Satisfies UniformRandomBitGenerator so
/// it can drive <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngSeed seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) noexcept { return uniform() < prob; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

using VoteVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

/// One-step transition probabilities of the stationary two-state chain with
/// marginal `rate` and lag-1 autocorrelation `gamma`.
struct MarkovTransition {
  double t11;  // Pr(next = 1 | current = 1)
  double t01;  // Pr(next = 1 | current = 0)
};

MarkovTransition markov_transition_probs(double rate, double gamma);

double sample_beta(const BetaSpec& spec, Rng& rng);

/// Fills `out` with one class-conditional vote vector drawn from `rng`.
/// Independent models with a concentration draw per-classifier rates from
/// the Beta law with mean `rate` first.
void fill_votes(const CorrelationModel& model, double rate, Rng& rng, std::span<std::uint8_t> out);

VoteVector sample_votes(const CorrelationModel& model, int n, double rate, RngSeed seed);

/// p_i ~ Beta(spec) for each classifier, then vote_i ~ Bernoulli(p_i).
void fill_votes_heterogeneous(const BetaSpec& spec, Rng& rng, std::span<std::uint8_t> out);

VoteVector sample_votes_heterogeneous(const BetaSpec& spec, int n, RngSeed seed);

/// 1 iff strictly more than half of the votes are 1; ties go to 0.
int majority_vote(std::span<const std::uint8_t> votes);

inline int majority_vote(const VoteVector& votes) {
  return majority_vote(std::span<const std::uint8_t>(votes.data(), static_cast<std::size_t>(votes.size())));
}

}  // namespace mvote
