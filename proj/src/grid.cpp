#include "mvote/grid.hpp"

#include <cstdio>
#include <ostream>

#include "mvote/parallel.hpp"

namespace mvote {

GridRow grid_row(double p, double q, const GridSpec& spec) {
  const RatePair rates(p, q);
  const Prior prior = spec.prior();
  const CorrelationModel& model = spec.model();
  const double err = mean_individual_error(rates, prior);

  const ErrorEstimate asymptotic = estimated_error_asymptotic(rates, prior, model);
  ErrorEstimate est = asymptotic;
  if (const auto n = spec.n()) est = estimated_error(EnsembleConfig(*n, rates, prior, model));

  const bool equicorrelated = std::holds_alternative<Equicorrelated>(model);
  const double delta_inf = equicorrelated ? asymptotic.value - err : limiting_delta(rates, prior).delta_inf;
  return GridRow{p, q, err, est.value, est.value - err, delta_inf, sign_of(delta_inf), est.abusive};
}

namespace {

std::vector<double> axis(double lo, double hi, int resolution, bool include_half) {
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double x = GridSpec::axis_point(lo, hi, resolution, i);
    if (x == 0.5 && !include_half) continue;
    points.push_back(x);
  }
  return points;
}

}  // namespace

std::vector<GridRow> sweep(const GridSpec& spec, int threads) {
  const RawGridSpec& raw = spec.raw();
  const std::vector<double> ps = axis(raw.p_min, raw.p_max, raw.p_resolution, raw.include_half);
  const std::vector<double> qs = axis(raw.q_min, raw.q_max, raw.q_resolution, raw.include_half);
  std::vector<GridRow> rows(ps.size() * qs.size());
  parallel_for(ps.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < qs.size(); ++j) rows[i * qs.size() + j] = grid_row(ps[i], qs[j], spec);
  });
  return rows;
}

Improvement max_improvement(const GridSpec& spec, int threads) {
  const std::vector<GridRow> rows = sweep(spec, threads);
  if (rows.empty()) throw Error(ErrorCode::BadSize, "grid contains no points");
  Improvement best{-rows.front().delta_n, rows.front().p, rows.front().q};
  for (const auto& row : rows)
    if (-row.delta_n > best.value) best = {-row.delta_n, row.p, row.q};
  return best;
}

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows) {
  out << "p,q,err,err_hat,delta_n,delta_inf,phase,abusive\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%c,%s\n", r.p, r.q, r.err, r.err_hat,
                  r.delta_n, r.delta_inf, phase_symbol(r.phase), r.abusive ? "true" : "false");
    out << line;
  }
}

}  // namespace mvote
