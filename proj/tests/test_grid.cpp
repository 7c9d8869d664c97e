#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mvote/grid.hpp"

using namespace mvote;

namespace {

RawGridSpec step_grid(double step, std::optional<long long> n, CorrelationModel m, double pi = 0.5) {
  RawGridSpec raw;
  raw.p_min = raw.q_min = step;
  raw.p_max = raw.q_max = 1.0 - step;
  raw.p_resolution = raw.q_resolution = resolution_for_step(raw.p_min, raw.p_max, step);
  raw.n = n;
  raw.pi = pi;
  raw.model = m;
  return raw;
}

// Limiting delta at pi = 1/2 written as (p - q)/2 plus a per-cell constant.
double half_prior_table(double p, double q) {
  auto idx = [](double x) { return x < 0.5 ? 0 : (x == 0.5 ? 1 : 2); };
  constexpr double offsets[3][3] = {
      // p<1/2  p=1/2  p>1/2
      {0.0, -0.25, -0.5},   // q < 1/2
      {0.25, 0.0, -0.25},   // q = 1/2
      {0.5, 0.25, 0.0},     // q > 1/2
  };
  return (p - q) / 2.0 + offsets[idx(q)][idx(p)];
}

}  // namespace

TEST_CASE("3x3 grid reproduces the pi = 1/2 limiting table") {
  RawGridSpec raw;
  raw.p_min = raw.q_min = 0.25;
  raw.p_max = raw.q_max = 0.75;
  raw.p_resolution = raw.q_resolution = 3;
  raw.n = 1000;
  raw.include_half = true;
  const auto rows = sweep(GridSpec(raw));
  REQUIRE(rows.size() == 9);
  for (const auto& r : rows) CHECK(std::abs(r.delta_inf - half_prior_table(r.p, r.q)) <= 1e-15);
  CHECK(rows[6].p == 0.75);
  CHECK(rows[6].q == 0.25);
  CHECK(rows[6].delta_inf == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("rows come out p-outer, q-inner") {
  RawGridSpec raw;
  raw.p_min = raw.q_min = 0.4;
  raw.p_max = raw.q_max = 0.6;
  raw.p_resolution = raw.q_resolution = 2;
  raw.n = 10;
  const auto rows = sweep(GridSpec(raw));
  REQUIRE(rows.size() == 4);
  CHECK((rows[0].p == 0.4 && rows[0].q == 0.4));
  CHECK((rows[1].p == 0.4 && rows[1].q == 0.6));
  CHECK((rows[2].p == 0.6 && rows[2].q == 0.4));
  CHECK((rows[3].p == 0.6 && rows[3].q == 0.6));
}

TEST_CASE("points on 1/2 are skipped unless requested") {
  RawGridSpec raw = step_grid(0.25, 50, Independent{});
  CHECK(sweep(GridSpec(raw)).size() == 4);
  raw.include_half = true;
  CHECK(sweep(GridSpec(raw)).size() == 9);
}

TEST_CASE("row invariants") {
  for (const CorrelationModel& m :
       {CorrelationModel{Independent{}}, CorrelationModel{Geometric{0.5}}, CorrelationModel{Equicorrelated{0.3}}}) {
    const auto rows = sweep(GridSpec(step_grid(0.05, 200, m, 0.3)));
    for (const auto& r : rows) {
      CHECK(r.delta_n == r.err_hat - r.err);
      CHECK(r.phase == sign_of(r.delta_inf));
      CHECK(r.abusive == std::holds_alternative<Equicorrelated>(m));
    }
  }
}

TEST_CASE("phase labels at pi = 1/2 follow the region predicate") {
  RawGridSpec raw = step_grid(0.01, std::nullopt, Independent{});
  raw.include_half = true;
  for (const auto& r : sweep(GridSpec(raw))) {
    const double p = r.p, q = r.q;
    PhaseSign expected;
    if (p == q) {
      expected = PhaseSign::Neutral;
    } else if (p >= 0.5 && q <= 0.5) {
      expected = PhaseSign::Beneficial;
    } else if (p <= 0.5 && q >= 0.5) {
      expected = PhaseSign::Harmful;
    } else {
      // Same side of 1/2: the vote converges to one class.
      expected = p < q ? PhaseSign::Beneficial : PhaseSign::Harmful;
    }
    CHECK(r.phase == expected);
    CHECK(sign_of(half_prior_table(p, q)) == expected);
    CHECK(std::abs(r.delta_inf - half_prior_table(p, q)) <= 1e-15);
  }
}

TEST_CASE("pi = 1/2 limiting delta is symmetric under (p, q) -> (1 - q, 1 - p)") {
  RawGridSpec raw = step_grid(0.01, std::nullopt, Independent{});
  raw.include_half = true;
  const GridSpec spec(raw);
  for (const auto& r : sweep(spec)) {
    const GridRow mirror = grid_row(GridSpec::axis_point(0, 1, 101, static_cast<int>(std::lround((1 - r.q) * 100))),
                                    GridSpec::axis_point(0, 1, 101, static_cast<int>(std::lround((1 - r.p) * 100))), spec);
    CHECK(std::abs(r.delta_inf - mirror.delta_inf) <= 1e-15);
  }
}

TEST_CASE("max_improvement at n = 100") {
  const Improvement indep = max_improvement(GridSpec(step_grid(0.01, 100, Independent{})));
  CHECK(indep.value >= 0.35);
  CHECK(indep.value <= 0.43);
  CHECK(std::abs(indep.p - 0.6) <= 0.05);
  CHECK(std::abs(indep.q - 0.4) <= 0.05);

  const Improvement corr = max_improvement(GridSpec(step_grid(0.01, 100, Geometric{0.8})));
  CHECK(corr.value >= 0.19);
  CHECK(corr.value <= 0.26);

  RawGridSpec centre;
  centre.p_min = centre.p_max = centre.q_min = centre.q_max = 0.5;
  centre.p_resolution = centre.q_resolution = 1;
  centre.n = 100;
  centre.include_half = true;
  const Improvement zero = max_improvement(GridSpec(centre));
  CHECK(zero.value == 0.0);
  CHECK((zero.p == 0.5 && zero.q == 0.5));
}

TEST_CASE("equicorrelated lambda = 0.7 limit") {
  const auto rows = sweep(GridSpec(step_grid(0.01, std::nullopt, Equicorrelated{0.7})));
  double best = -1.0;
  GridRow at{};
  for (const auto& r : rows)
    if (-r.delta_inf > best) {
      best = -r.delta_inf;
      at = r;
    }
  CHECK(best >= 0.035);
  CHECK(best <= 0.055);
  // Mirror-L region: very high TPR or very low FPR.
  CHECK((at.p >= 0.8 || at.q <= 0.2));

  const GridRow golden = grid_row(0.6, 0.4, GridSpec(step_grid(0.01, std::nullopt, Equicorrelated{0.7})));
  CHECK(golden.delta_inf > 0.0);
  CHECK(golden.phase == PhaseSign::Harmful);
}

TEST_CASE("grid csv format") {
  RawGridSpec raw;
  raw.p_min = raw.q_min = 0.4;
  raw.p_max = raw.q_max = 0.6;
  raw.p_resolution = raw.q_resolution = 2;
  raw.n = 10;
  std::ostringstream os;
  write_grid_csv(os, sweep(GridSpec(raw)));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,q,err,err_hat,delta_n,delta_inf,phase,abusive");
  std::getline(in, line);
  CHECK(line.rfind("0.4,0.4,0.5,", 0) == 0);
  CHECK(line.substr(line.size() - 8) == ",0,false");
}

TEST_CASE("grid output does not depend on worker count") {
  const GridSpec spec(step_grid(0.02, 75, Geometric{0.3}));
  std::ostringstream a, b;
  write_grid_csv(a, sweep(spec, 1));
  write_grid_csv(b, sweep(spec, 6));
  CHECK(a.str() == b.str());
}
