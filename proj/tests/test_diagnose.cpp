#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mvote/diagnose.hpp"
#include "mvote/oracle.hpp"

using namespace mvote;

namespace {

bool has_warning(const DiagnosisReport& r, const std::string& fragment) {
  return std::any_of(r.warnings.begin(), r.warnings.end(),
                     [&](const std::string& w) { return w.find(fragment) != std::string::npos; });
}

PredictionMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_prediction_csv(in);
}

ErrorCode parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("perfect classifiers sit on the boundary") {
  LabelVector y(4);
  y << 1, 1, 0, 0;
  BinaryMatrix f(4, 3);
  f << 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0;
  const DiagnosisReport r = diagnose(PredictionMatrix(y, f));
  CHECK(r.p_hat == 1.0);
  CHECK(r.q_hat == 0.0);
  CHECK(r.err_majority == 0.0);
  CHECK(r.verdict_p == 1.0 - kBoundaryClamp);
  CHECK(r.verdict_q == kBoundaryClamp);
  CHECK(r.verdict.sign == PhaseSign::Beneficial);
  CHECK(has_warning(r, "estimated p"));
  CHECK(has_warning(r, "estimated q"));
}

TEST_CASE("independent synthetic data: rates recovered and vote helps") {
  const EnsembleConfig cfg(25, RatePair(0.7, 0.3), Prior(0.5), Independent{});
  const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 10000, {11, 0}));
  CHECK(std::abs(r.p_hat - 0.7) <= 4.0 * r.positive.std_error);
  CHECK(std::abs(r.q_hat - 0.3) <= 4.0 * r.negative.std_error);
  CHECK(r.verdict.sign == PhaseSign::Beneficial);
  CHECK(std::abs(r.prior - 0.5) <= 0.03);
  CHECK(r.prior_estimated);
  REQUIRE(r.positive.mean_correlation);
  CHECK(std::abs(*r.positive.mean_correlation) <= 0.02);
  CHECK(r.warnings.empty());
}

TEST_CASE("both rates above 1/2: the vote converges to class 1") {
  const EnsembleConfig cfg(25, RatePair(0.55, 0.6), Prior(0.5), Independent{});
  const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 10000, {12, 0}));
  // limit error 1 - pi = 0.5 against err = 0.525
  const double pi = r.prior;
  CHECK(r.verdict.delta_inf == doctest::Approx((1 - pi) - ((1 - r.p_hat) * pi + r.q_hat * (1 - pi))));
  CHECK(std::abs(r.verdict.delta_inf + 0.025) <= 0.01);
  CHECK(r.verdict.sign == PhaseSign::Beneficial);
}

TEST_CASE("rates on the wrong sides give a harmful verdict") {
  const EnsembleConfig cfg(25, RatePair(0.45, 0.6), Prior(0.5), Independent{});
  const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 10000, {12, 0}));
  CHECK(r.verdict.sign == PhaseSign::Harmful);
  const double pi = r.prior;
  CHECK(r.verdict.delta_inf == doctest::Approx(1.0 - ((1 - r.p_hat) * pi + r.q_hat * (1 - pi))));
}

TEST_CASE("prior override") {
  const EnsembleConfig cfg(9, RatePair(0.7, 0.3), Prior(0.5), Independent{});
  const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 2000, {13, 0}), Prior(0.2));
  CHECK(r.prior == 0.2);
  CHECK_FALSE(r.prior_estimated);
  CHECK(r.err_hat_individual == doctest::Approx((1 - r.p_hat) * 0.2 + r.q_hat * 0.8));
}

TEST_CASE("correlation structure is recovered") {
  SUBCASE("geometric, ordered") {
    const EnsembleConfig cfg(15, RatePair(0.7, 0.3), Prior(0.5), Geometric{0.6});
    const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 20000, {14, 0}), std::nullopt, true);
    REQUIRE(r.positive.lag1_correlation);
    REQUIRE(r.negative.lag1_correlation);
    CHECK(std::abs(*r.positive.lag1_correlation - 0.6) <= 0.03);
    CHECK(std::abs(*r.negative.lag1_correlation - 0.6) <= 0.03);
    // Average of gamma^|i-j| over distinct pairs.
    double sum = 0.0;
    for (int d = 1; d < 15; ++d) sum += (15 - d) * std::pow(0.6, d);
    CHECK(std::abs(*r.positive.mean_correlation - sum / (15 * 14 / 2)) <= 0.03);
    CHECK(has_warning(r, "high mean correlation") == false);
  }
  SUBCASE("equicorrelated, unordered") {
    const EnsembleConfig cfg(15, RatePair(0.7, 0.3), Prior(0.5), Equicorrelated{0.6});
    const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 20000, {15, 0}));
    CHECK_FALSE(r.positive.lag1_correlation);
    REQUIRE(r.positive.mean_correlation);
    CHECK(std::abs(*r.positive.mean_correlation - 0.6) <= 0.03);
    CHECK(std::abs(*r.negative.mean_correlation - 0.6) <= 0.03);
    CHECK(has_warning(r, "high mean correlation"));
  }
}

TEST_CASE("observed majority error matches the exact error") {
  for (const CorrelationModel& m :
       {CorrelationModel{Independent{}}, CorrelationModel{Geometric{0.5}}, CorrelationModel{Equicorrelated{0.3}}}) {
    const EnsembleConfig cfg(11, RatePair(0.6, 0.35), Prior(0.4), m);
    const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 20000, {16, 0}));
    const double exact = exact_error(cfg);
    CHECK(std::abs(r.err_majority - exact) <= 4.0 * std::sqrt(exact * (1 - exact) / 20000));
  }
}

TEST_CASE("rates near 1/2 are flagged") {
  const EnsembleConfig cfg(5, RatePair(0.5, 0.3), Prior(0.5), Independent{});
  const DiagnosisReport r = diagnose(synthesize_predictions(cfg, 400, {17, 0}));
  CHECK(has_warning(r, "p_hat"));
}

TEST_CASE("constant classifiers are reported") {
  LabelVector y(6);
  y << 1, 1, 1, 0, 0, 0;
  BinaryMatrix f(6, 3);
  f << 1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1;
  const DiagnosisReport r = diagnose(PredictionMatrix(y, f));
  CHECK(has_warning(r, "constant within class 1"));
}

TEST_CASE("prediction csv parsing") {
  const PredictionMatrix m = parse("y,f1,f2,f3\n1,1,0,1\n0,0,0,1\n1,1,1,1\n");
  CHECK(m.samples() == 3);
  CHECK(m.classifiers() == 3);
  CHECK(m.labels()[1] == 0);
  CHECK(m.votes()(0, 1) == 0);

  std::ostringstream os;
  write_prediction_csv(os, m);
  CHECK(os.str() == "y,f1,f2,f3\n1,1,0,1\n0,0,0,1\n1,1,1,1\n");

  CHECK(parse_error("y,f1\n1,2\n0,0\n") == ErrorCode::NonBinaryEntry);
  CHECK(parse_error("y,f1\n1,0.5\n0,0\n") == ErrorCode::NonBinaryEntry);
  CHECK(parse_error("y,f1\n1,1\n1,0\n") == ErrorCode::SingleClassData);
  CHECK(parse_error("y,f1,f2\n1,1\n0,0,0\n") == ErrorCode::Io);
  CHECK(parse_error("label,f1\n1,1\n0,0\n") == ErrorCode::Io);
  CHECK(parse_error("") == ErrorCode::Io);
}

TEST_CASE("synthetic matrices round-trip through csv") {
  const EnsembleConfig cfg(7, RatePair(0.8, 0.2), Prior(0.3), Geometric{0.4});
  const PredictionMatrix m = synthesize_predictions(cfg, 500, {18, 3});
  std::ostringstream os;
  write_prediction_csv(os, m);
  const PredictionMatrix back = parse(os.str());
  CHECK(back.labels() == m.labels());
  CHECK(back.votes() == m.votes());
  const PredictionMatrix again = synthesize_predictions(cfg, 500, {18, 3});
  CHECK(again.votes() == m.votes());
}
