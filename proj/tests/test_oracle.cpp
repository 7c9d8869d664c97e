#include <doctest.h>

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <random>

#include "mvote/analytic.hpp"
#include "mvote/oracle.hpp"

using namespace mvote;

namespace {

EnsembleConfig make(int n, double p, double q, double pi, CorrelationModel m = Independent{}) {
  return validate_config({n, p, q, pi, m});
}

CorrelationModel random_model(std::mt19937_64& gen, int which) {
  std::uniform_real_distribution<double> u(0.02, 0.98);
  switch (which % 3) {
    case 0: return Independent{};
    case 1: return Geometric{u(gen)};
    default: return Equicorrelated{u(gen)};
  }
}

}  // namespace

TEST_CASE("vote pmf examples") {
  const VotePmf bin = exact_vote_pmf(Independent{}, 5, 0.7);
  CHECK(bin.mass.size() == 6);
  CHECK(std::abs(bin.mass[5] - 0.16807) <= 1e-15);
  CHECK(std::abs(bin.mass[0] - 0.00243) <= 1e-15);

  const VotePmf eq = exact_vote_pmf(Equicorrelated{0.2}, 5, 0.7);
  CHECK(std::abs(eq.mass[0] - 0.061944) <= 1e-15);
  CHECK(std::abs(eq.mass[5] - (0.2 * 0.7 + 0.8 * 0.16807)) <= 1e-15);

  const VotePmf geo = exact_vote_pmf(Geometric{0.5}, 2, 0.6);
  CHECK(std::abs(geo.mass[2] - 0.48) <= 1e-15);
  CHECK(std::abs(geo.mass[1] - 2 * 0.6 * 0.2) <= 1e-15);
  CHECK(std::abs(geo.mass[0] - 0.4 * 0.7) <= 1e-15);
}

TEST_CASE("heterogeneous independent pmf is binomial") {
  const VotePmf het = exact_vote_pmf(Independent{3.0}, 9, 0.35);
  const VotePmf hom = exact_vote_pmf(Independent{}, 9, 0.35);
  CHECK((het.mass - hom.mass).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("binomial pmf tails agree with the incomplete beta function") {
  for (int n : {1, 7, 100, 1001, 20000, 100000}) {
    for (double r : {0.03, 0.45, 0.5, 0.62, 0.97}) {
      const VotePmf pmf = binomial_pmf(n, r);
      const boost::math::binomial_distribution<double> ref(n, r);
      for (int k : {0, n / 3, n / 2, (2 * n) / 3, n - 1}) {
        if (k < 0) continue;
        const double lower = boost::math::cdf(ref, k);
        CHECK(std::abs(pmf.cdf(k) - lower) <= 1e-12);
      }
    }
  }
}

TEST_CASE("vote pmf mean and variance match the closed-form moments") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 300; ++trial) {
    const CorrelationModel m = random_model(gen, trial);
    const int n = size(gen);
    const double r = u(gen);
    const VotePmf pmf = exact_vote_pmf(m, n, r);
    CHECK((pmf.mass.array() >= 0.0).all());
    CHECK(std::abs(pmf.total() - 1.0) <= 1e-12);
    CHECK(std::abs(pmf.mean() - n * r) <= 1e-9 * n * r);
    const double var = sum_variance(m, n, r);
    CHECK(std::abs(pmf.variance() - var) <= 1e-9 * var);
  }
}

TEST_CASE("exact_error examples") {
  CHECK(std::abs(exact_error(make(5, 0.7, 0.3, 0.5)) - 0.16308) <= 1e-14);
  CHECK(std::abs(exact_error(make(5, 0.7, 0.3, 0.5, Equicorrelated{0.2})) - 0.190464) <= 1e-14);
  // Geometric, n = 2, hand enumeration: class 1 errs unless both vote 1
  // (1 - 0.6 * 0.8), class 0 errs only when both vote 1 (0.4 * 0.7).
  CHECK(std::abs(exact_error(make(2, 0.6, 0.4, 0.5, Geometric{0.5})) - 0.4) <= 1e-14);
  CHECK(std::abs(exact_conditional_error(make(2, 0.5, 0.5, 0.5), 1) - 0.75) <= 1e-15);
}

TEST_CASE("a one-member vote is the individual classifier") {
  for (const CorrelationModel& m :
       {CorrelationModel{Independent{}}, CorrelationModel{Geometric{0.4}}, CorrelationModel{Equicorrelated{0.6}}}) {
    const auto cfg = make(1, 0.63, 0.21, 0.37, m);
    CHECK(std::abs(exact_error(cfg) - mean_individual_error(cfg.rates(), cfg.prior())) <= 1e-15);
  }
}

TEST_CASE("brute force examples") {
  CHECK(std::abs(brute_force_error(make(3, 0.5, 0.5, 0.5)) - 0.5) <= 1e-15);
  CHECK(std::abs(brute_force_error(make(5, 0.7, 0.3, 0.5)) - 0.16308) <= 1e-14);
  CHECK(std::abs(brute_force_error(make(2, 0.6, 0.4, 0.5, Geometric{0.5})) - 0.4) <= 1e-14);
}

TEST_CASE("exact_error equals brute-force enumeration") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int trial = 0; trial < 150; ++trial) {
    const CorrelationModel m = random_model(gen, trial);
    for (int n = 1; n <= 12; ++n) {
      const auto cfg = make(n, u(gen), u(gen), u(gen), m);
      CHECK(std::abs(exact_error(cfg) - brute_force_error(cfg)) <= 1e-12);
    }
  }
}

TEST_CASE("class relabelling symmetry at odd n") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int trial = 0; trial < 90; ++trial) {
    const CorrelationModel m = random_model(gen, trial);
    const int n = 2 * (trial % 20) + 1;
    const double p = u(gen), q = u(gen), pi = u(gen);
    const double a = exact_error(make(n, p, q, pi, m));
    const double b = exact_error(make(n, 1.0 - q, 1.0 - p, 1.0 - pi, m));
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("exact independent error converges to the table limit") {
  for (double p : {0.55, 0.7, 0.9})
    for (double q : {0.1, 0.3, 0.45})
      for (double pi : {0.3, 0.5}) {
        const auto cfg = make(10001, p, q, pi);
        CHECK(std::abs(exact_error(cfg) - limiting_error(cfg.rates(), cfg.prior())) <= 1e-3);
      }
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(brute_force_error(make(21, 0.6, 0.4, 0.5)), Error);
  try {
    exact_vote_pmf(Geometric{0.5}, kExactSizeGuard + 1, 0.5);
    FAIL("expected guard");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeGuardExceeded);
  }
  CHECK_NOTHROW(exact_vote_pmf(Independent{}, kExactSizeGuard, 0.5));
}
