#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "ruinlab/errors.hpp"

namespace ruinlab {

/// Standard normal quantile, Wichura's PPND16 (AS 241). |error| < 1e-15
/// over (0,1); saturates to +-inf at the endpoints.
double inv_norm_cdf(double p);

/// P(Z >= z) for standard normal Z.
double norm_upper_tail(double z);

/// log P(Z >= z), stable far into the tail (asymptotic series past the
/// erfc underflow point).
double log_norm_upper_tail(double z);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  std::size_t max_evals = 1'000'000;
};

namespace detail {

template <typename F>
double simpson_rec(const F& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth,
                   std::size_t& evals, const QuadratureOptions& opts) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if ((evals += 2) > opts.max_evals)
    throw BudgetError("adaptive quadrature exceeded its evaluation cap");
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                     evals, opts) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                     evals, opts);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a,b]. The accept test uses
/// max(abs_tol, rel_tol * |first estimate|).
template <typename F>
double adaptive_simpson(const F& f, double a, double b,
                        const QuadratureOptions& opts = {}) {
  if (!(b > a)) return 0.0;
  std::size_t evals = 3;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(whole));
  return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 48, evals,
                             opts);
}

/// Integral over [a, inf) of a nonnegative integrand that decreases to zero.
/// Doubling windows are summed until the next window is negligible relative
/// to the running total.
template <typename F>
double integrate_decreasing_tail(const F& f, double a,
                                 const QuadratureOptions& opts = {}) {
  const double f0 = f(a);
  if (f0 == 0.0) return 0.0;
  // Locate the decay scale so the first window is proportionate.
  double w = 1.0;
  while (f(a + w) > 0.5 * f0 && w < 1e30) w *= 2.0;
  double total = 0.0;
  double left = a;
  for (int k = 0; k < 200; ++k) {
    const double right = left + w;
    const double seg = adaptive_simpson(f, left, right, opts);
    total += seg;
    if (k > 0 && seg <= 1e-14 * total) break;
    if (f(right) == 0.0) break;
    left = right;
    w *= 2.0;
  }
  return total;
}

/// Golden-section minimum of a unimodal f on [a,b].
template <typename F>
double golden_section_min(const F& f, double a, double b, double tol,
                          double* arg_min = nullptr) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  if (arg_min) *arg_min = xm;
  return f(xm);
}

}  // namespace ruinlab
