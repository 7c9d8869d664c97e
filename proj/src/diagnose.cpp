#include "mvote/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace mvote {

PredictionMatrix::PredictionMatrix(LabelVector labels, BinaryMatrix votes)
    : labels_(std::move(labels)), votes_(std::move(votes)) {
  if (labels_.size() != votes_.rows())
    throw Error(ErrorCode::BadSize, "label count does not match the number of prediction rows");
  if (votes_.rows() < 2) throw Error(ErrorCode::BadSize, "need at least two samples");
  if (votes_.cols() < 1) throw Error(ErrorCode::BadSize, "need at least one classifier");
  if ((labels_.array() > 1).any() || (votes_.array() > 1).any())
    throw Error(ErrorCode::NonBinaryEntry, "labels and predictions must be 0 or 1");
  const auto ones = (labels_.array() == 1).count();
  if (ones == 0 || ones == labels_.size())
    throw Error(ErrorCode::SingleClassData, "both classes must appear among the labels");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    field.erase(0, field.find_first_not_of(" \t\r"));
    field.erase(field.find_last_not_of(" \t\r") + 1);
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::uint8_t parse_bit(const std::string& field, std::size_t line_no) {
  if (field == "0") return 0;
  if (field == "1") return 1;
  throw Error(ErrorCode::NonBinaryEntry,
              "line " + std::to_string(line_no) + ": entry '" + field + "' is not 0 or 1");
}

}  // namespace

PredictionMatrix read_prediction_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = split_fields(line);
  }
  if (header.size() < 2 || header.front() != "y")
    throw Error(ErrorCode::Io, "prediction CSV must start with a header `y,f1,...,fm`");
  const std::size_t m = header.size() - 1;

  std::vector<std::uint8_t> labels;
  std::vector<std::uint8_t> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (fields.size() != m + 1)
      throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected " + std::to_string(m + 1) +
                                     " fields, found " + std::to_string(fields.size()));
    labels.push_back(parse_bit(fields[0], line_no));
    for (std::size_t j = 1; j <= m; ++j) cells.push_back(parse_bit(fields[j], line_no));
  }
  const auto rows = static_cast<Eigen::Index>(labels.size());
  LabelVector y = Eigen::Map<const LabelVector>(labels.data(), rows);
  BinaryMatrix votes =
      Eigen::Map<const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          cells.data(), rows, static_cast<Eigen::Index>(m));
  return PredictionMatrix(std::move(y), std::move(votes));
}

void write_prediction_csv(std::ostream& out, const PredictionMatrix& matrix) {
  out << 'y';
  for (Eigen::Index j = 0; j < matrix.classifiers(); ++j) out << ",f" << (j + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < matrix.samples(); ++i) {
    out << static_cast<int>(matrix.labels()[i]);
    for (Eigen::Index j = 0; j < matrix.classifiers(); ++j) out << ',' << static_cast<int>(matrix.votes()(i, j));
    out << '\n';
  }
}

PredictionMatrix synthesize_predictions(const EnsembleConfig& cfg, int samples, RngSeed seed) {
  if (samples < 2) throw Error(ErrorCode::BadSize, "need at least two samples");
  const int m = cfg.n();
  LabelVector labels(samples);
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> votes(samples, m);
  for (int i = 0; i < samples; ++i) {
    Rng rng(seed.substream(static_cast<std::uint64_t>(i)));
    const int y = rng.bernoulli(cfg.prior().pi()) ? 1 : 0;
    labels[i] = static_cast<std::uint8_t>(y);
    fill_votes(cfg.model(), cfg.rate(y), rng, std::span<std::uint8_t>(votes.row(i).data(), static_cast<std::size_t>(m)));
  }
  return PredictionMatrix(std::move(labels), BinaryMatrix(votes));
}

namespace {

struct ClassSummary {
  ClassStats stats;
  int skipped_constant = 0;
};

ClassSummary summarize_class(const PredictionMatrix& matrix, int label, bool ordered) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < matrix.samples(); ++i)
    if (matrix.labels()[i] == label) rows.push_back(i);
  const auto nc = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index m = matrix.classifiers();
  Eigen::MatrixXd x(nc, m);
  for (Eigen::Index r = 0; r < nc; ++r) x.row(r) = matrix.votes().row(rows[static_cast<std::size_t>(r)]).cast<double>();

  ClassSummary out;
  ClassStats& s = out.stats;
  s.samples = nc;
  s.per_classifier = x.colwise().mean().transpose();
  s.rate = s.per_classifier.mean();
  // The class rate is the sample mean of per-row vote averages, so its
  // standard error holds under any dependence between classifiers.
  if (nc > 1) {
    const Eigen::VectorXd row_mean = x.rowwise().mean();
    const double row_var = (row_mean.array() - s.rate).square().sum() / static_cast<double>(nc - 1);
    s.std_error = std::sqrt(row_var / static_cast<double>(nc));
  }

  if (m < 2 || nc < 2) return out;
  const Eigen::MatrixXd centred = x.rowwise() - s.per_classifier.transpose();
  const Eigen::MatrixXd cov = centred.transpose() * centred / static_cast<double>(nc - 1);
  const Eigen::VectorXd var = cov.diagonal();
  for (Eigen::Index j = 0; j < m; ++j) out.skipped_constant += var[j] > 0.0 ? 0 : 1;

  double total = 0.0;
  long pairs = 0;
  double lag_total = 0.0;
  long lag_pairs = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(var[i] > 0.0)) continue;
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (!(var[j] > 0.0)) continue;
      const double r = cov(i, j) / std::sqrt(var[i] * var[j]);
      total += r;
      ++pairs;
      if (j == i + 1) {
        lag_total += r;
        ++lag_pairs;
      }
    }
  }
  if (pairs > 0) s.mean_correlation = total / static_cast<double>(pairs);
  if (ordered && lag_pairs > 0) s.lag1_correlation = lag_total / static_cast<double>(lag_pairs);
  return out;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

DiagnosisReport diagnose(const PredictionMatrix& matrix, std::optional<Prior> prior_override, bool ordered) {
  DiagnosisReport report;
  const ClassSummary pos = summarize_class(matrix, 1, ordered);
  const ClassSummary neg = summarize_class(matrix, 0, ordered);
  report.positive = pos.stats;
  report.negative = neg.stats;
  report.p_hat = pos.stats.rate;
  report.q_hat = neg.stats.rate;

  const double n_total = static_cast<double>(matrix.samples());
  report.prior_estimated = !prior_override.has_value();
  report.prior = prior_override ? prior_override->pi() : static_cast<double>(pos.stats.samples) / n_total;
  const double pi = report.prior;
  report.err_hat_individual = (1.0 - report.p_hat) * pi + report.q_hat * (1.0 - pi);

  Eigen::Index wrong = 0;
  for (Eigen::Index i = 0; i < matrix.samples(); ++i) {
    const auto row = matrix.votes().row(i);
    const Eigen::Index ones = (row.array() == 1).count();
    const int predicted = 2 * ones > matrix.classifiers() ? 1 : 0;
    wrong += predicted != matrix.labels()[i];
  }
  report.err_majority = static_cast<double>(wrong) / n_total;
  report.err_majority_se = std::sqrt(report.err_majority * (1.0 - report.err_majority) / n_total);

  auto clamp = [&](double rate, const char* name) {
    if (rate > kBoundaryClamp && rate < 1.0 - kBoundaryClamp) return rate;
    report.warnings.push_back(std::string("estimated ") + name + " = " + format_number(rate) +
                              " is on the boundary; verdict computed at the clamped value");
    return std::clamp(rate, kBoundaryClamp, 1.0 - kBoundaryClamp);
  };
  report.verdict_p = clamp(report.p_hat, "p");
  report.verdict_q = clamp(report.q_hat, "q");
  report.verdict = limiting_delta(RatePair(report.verdict_p, report.verdict_q), Prior(pi));

  for (const ClassSummary* cls : {&pos, &neg}) {
    const char* which = cls == &pos ? "class 1" : "class 0";
    const ClassStats& s = cls->stats;
    if (s.mean_correlation && *s.mean_correlation >= kHighCorrelation)
      report.warnings.push_back(std::string("high mean correlation (") + format_number(*s.mean_correlation) +
                                ") within " + which + ": asymptotic verdict unreliable under strong dependence");
    if (cls->skipped_constant > 0)
      report.warnings.push_back(std::to_string(cls->skipped_constant) + " classifier(s) constant within " + which +
                                "; excluded from correlation summary");
    const double rate = s.rate;
    if (std::abs(rate - 0.5) <= 2.0 * s.std_error)
      report.warnings.push_back(std::string(cls == &pos ? "p" : "q") + "_hat = " + format_number(rate) +
                                " is within 2 standard errors of 0.5: phase indeterminate");
  }
  return report;
}

void write_report_text(std::ostream& out, const DiagnosisReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "samples: class1=%lld class0=%lld, classifiers=%lld\n"
                "p_hat = %.6f (se %.2e)\nq_hat = %.6f (se %.2e)\n"
                "prior = %.6f (%s)\n"
                "mean individual error = %.6f\nmajority-vote error   = %.6f (se %.2e)\n",
                static_cast<long long>(r.positive.samples), static_cast<long long>(r.negative.samples),
                static_cast<long long>(r.positive.per_classifier.size()), r.p_hat, r.positive.std_error, r.q_hat,
                r.negative.std_error, r.prior, r.prior_estimated ? "estimated" : "given", r.err_hat_individual,
                r.err_majority, r.err_majority_se);
  out << buf;
  auto corr = [](const std::optional<double>& c) { return c ? format_number(*c) : std::string("n/a"); };
  out << "mean within-class correlation: class1=" << corr(r.positive.mean_correlation)
      << " class0=" << corr(r.negative.mean_correlation) << '\n';
  if (r.positive.lag1_correlation || r.negative.lag1_correlation)
    out << "lag-1 correlation: class1=" << corr(r.positive.lag1_correlation)
        << " class0=" << corr(r.negative.lag1_correlation) << '\n';
  std::snprintf(buf, sizeof(buf), "limiting delta = %.6f -> %s\n", r.verdict.delta_inf, to_string(r.verdict.sign));
  out << buf;
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

}  // namespace mvote
