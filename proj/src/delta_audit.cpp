#include <cmath>
#include <limits>
#include <stdexcept>

#include "gradenorm/analyzer.hpp"

namespace gradenorm {

namespace {

// log of (p+q-1) w_rho(p+q) / (w_sigma(p) w_tau(q)), with the denominator
// logs summed before subtracting so that (p,q) and (q,p) produce bitwise
// identical values for identical sigma/tau weights (tie-breaking depends
// on it).
double log_term(const WeightSpec& ws, const WeightSpec& wt, const WeightSpec& wr, int p,
                int q) {
  return std::log(static_cast<double>(p + q - 1)) + wr.log_weight(p + q) -
         (ws.log_weight(p) + wt.log_weight(q));
}

// Direct-arithmetic value at a single cell, with a log-space fallback when
// the direct route over/underflows.
double direct_term(const WeightSpec& ws, const WeightSpec& wt, const WeightSpec& wr, int p,
                   int q) {
  const double num = static_cast<double>(p + q - 1) * wr.weight(p + q);
  const double den = ws.weight(p) * wt.weight(q);
  if (std::isfinite(num) && std::isfinite(den) && den >= 1e-280 && num < 1e280)
    return num / den;
  return std::exp(log_term(ws, wt, wr, p, q));
}

}  // namespace

AuditReport delta_audit(const WeightSpec& w_sigma, const WeightSpec& w_tau,
                        const WeightSpec& w_rho, int grid_bound, double target_gamma,
                        double tolerance) {
  if (grid_bound < 2) throw std::invalid_argument("delta_audit: grid bound must be >= 2");
  w_sigma.validate(grid_bound);
  w_tau.validate(grid_bound);
  w_rho.validate(2 * grid_bound);

  double best_log = -std::numeric_limits<double>::infinity();
  int best_p = 0, best_q = 0;
  // Scan in tie-break order: smallest p+q first, then smallest p.  Cells
  // that agree mathematically can differ by lgamma rounding noise, so ties
  // are resolved with a small log-scale tolerance in favor of the earlier
  // cell.
  constexpr double kTieTol = 1e-12;
  for (int s = 2; s <= 2 * grid_bound; ++s) {
    for (int p = std::max(1, s - grid_bound); p <= std::min(grid_bound, s - 1); ++p) {
      const int q = s - p;
      const double lt = log_term(w_sigma, w_tau, w_rho, p, q);
      if (lt > best_log + kTieTol) {
        best_log = lt;
        best_p = p;
        best_q = q;
      }
    }
  }

  AuditReport report;
  report.grid_bound = grid_bound;
  report.delta_min = direct_term(w_sigma, w_tau, w_rho, best_p, best_q);
  report.argmax_p = best_p;
  report.argmax_q = best_q;
  report.target_gamma = target_gamma;
  report.tolerance = tolerance;
  report.pass = kSqrt3 * std::max(1.0, report.delta_min) <= target_gamma + tolerance;
  return report;
}

}  // namespace gradenorm
