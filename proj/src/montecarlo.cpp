#include "mvote/montecarlo.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mvote/parallel.hpp"

namespace mvote {

namespace {

std::size_t chunk_count(std::int64_t reps) {
  return static_cast<std::size_t>((reps + kMcChunkSize - 1) / kMcChunkSize);
}

std::int64_t chunk_reps(std::int64_t reps, std::size_t chunk) {
  const std::int64_t start = static_cast<std::int64_t>(chunk) * kMcChunkSize;
  return std::min(kMcChunkSize, reps - start);
}

// label < 0 draws the class from the prior on every replication.
McEstimate run_error(const EnsembleConfig& cfg, int label, std::int64_t reps, RngSeed seed, int threads) {
  if (reps < 100) throw Error(ErrorCode::BadSize, "reps = " + std::to_string(reps) + " must be at least 100");
  const std::size_t chunks = chunk_count(reps);
  std::vector<std::int64_t> wrong(chunks, 0);
  const double pi = cfg.prior().pi();
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(seed.substream(c));
    std::vector<std::uint8_t> votes(static_cast<std::size_t>(cfg.n()));
    std::int64_t count = 0;
    const std::int64_t todo = chunk_reps(reps, c);
    for (std::int64_t r = 0; r < todo; ++r) {
      const int y = label >= 0 ? label : (rng.bernoulli(pi) ? 1 : 0);
      fill_votes(cfg.model(), cfg.rate(y), rng, votes);
      count += majority_vote(votes) != y;
    }
    wrong[c] = count;
  });
  std::int64_t total = 0;
  for (auto w : wrong) total += w;
  const double value = static_cast<double>(total) / static_cast<double>(reps);
  return {value, std::sqrt(value * (1.0 - value) / static_cast<double>(reps)), reps, seed};
}

}  // namespace

McEstimate mc_error(const EnsembleConfig& cfg, std::int64_t reps, RngSeed seed, int threads) {
  return run_error(cfg, -1, reps, seed, threads);
}

McEstimate mc_conditional_error(const EnsembleConfig& cfg, int label, std::int64_t reps, RngSeed seed,
                                int threads) {
  if (label != 0 && label != 1) throw Error(ErrorCode::BadParameter, "class label must be 0 or 1");
  return run_error(cfg, label, reps, seed, threads);
}

CorrelationSummary mc_correlation_matrix(const CorrelationModel& model, int n, double rate, std::int64_t reps,
                                         RngSeed seed, int threads) {
  if (reps < 10000) throw Error(ErrorCode::BadSize, "reps = " + std::to_string(reps) + " must be at least 10^4");
  if (n < 2) throw Error(ErrorCode::BadSize, "correlations need n >= 2");
  check_model(model);
  const std::size_t chunks = chunk_count(reps);
  // Entries are integer counts, exact in double, so the reduction is exact.
  std::vector<Eigen::MatrixXd> grams(chunks);
  std::vector<Eigen::VectorXd> sums(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(seed.substream(c));
    const std::int64_t todo = chunk_reps(reps, c);
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> block(todo, n);
    for (std::int64_t r = 0; r < todo; ++r)
      fill_votes(model, rate, rng, std::span<std::uint8_t>(block.row(r).data(), static_cast<std::size_t>(n)));
    const Eigen::MatrixXd x = block.cast<double>();
    grams[c] = x.transpose() * x;
    sums[c] = x.colwise().sum().transpose();
  });
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  for (std::size_t c = 0; c < chunks; ++c) {
    gram += grams[c];
    sum += sums[c];
  }

  const double count = static_cast<double>(reps);
  const Eigen::VectorXd mean = sum / count;
  const Eigen::MatrixXd cov = (gram - count * mean * mean.transpose()) / (count - 1.0);
  const Eigen::VectorXd var = cov.diagonal();
  for (int i = 0; i < n; ++i)
    if (!(var[i] > 0.0))
      throw Error(ErrorCode::DegenerateVariance,
                  "vote position " + std::to_string(i) + " never varied; rate too extreme for reps");
  const Eigen::VectorXd inv_sd = var.array().rsqrt();
  const Eigen::MatrixXd corr = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();

  Eigen::VectorXd lag = Eigen::VectorXd::Zero(n);
  lag[0] = 1.0;
  for (int k = 1; k < n; ++k) lag[k] = corr.diagonal(k).mean();
  const double off = (corr.sum() - corr.trace()) / (static_cast<double>(n) * (n - 1));
  return {corr, mean, lag, off, reps};
}

}  // namespace mvote
