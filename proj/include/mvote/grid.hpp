#pragma once

// Sweeps of the (p, q) square built from closed-form quantities only.

#include <iosfwd>
#include <vector>

#include "mvote/analytic.hpp"
#include "mvote/model.hpp"

namespace mvote {

struct GridRow {
  double p;
  double q;
  double err;        // mean individual error
  double err_hat;    // normal-approximation majority error at the grid's n
  double delta_n;    // err_hat - err
  double delta_inf;  // n -> infinity limit of delta
  PhaseSign phase;   // sign of delta_inf
  bool abusive;      // exact finite-n sd stood in for an infinite sigma sqrt(n)
};

/// Grid point (p, q) at the grid's n. For the equicorrelated model the limit
/// delta_inf is the n-free substituted-variance expression.
GridRow grid_row(double p, double q, const GridSpec& spec);

/// Rows ordered p-outer, q-inner. Points exactly at 1/2 are skipped unless
/// the grid sets include_half.
std::vector<GridRow> sweep(const GridSpec& spec, int threads = 1);

struct Improvement {
  double value;  // max of -delta_n
  double p;
  double q;
};

/// Largest -delta_n over the grid; the first point in row-major order wins ties.
Improvement max_improvement(const GridSpec& spec, int threads = 1);

/// Header `p,q,err,err_hat,delta_n,delta_inf,phase,abusive`, 9 significant digits.
void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows);

}  // namespace mvote
