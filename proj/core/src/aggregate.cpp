#include "ruinlab/aggregate.hpp"

#include <cmath>
#include <stdexcept>

#include "ruinlab/errors.hpp"
#include "ruinlab/parallel.hpp"

namespace ruinlab {

namespace {

void require_regularly_varying(const ClaimDistribution& claims) {
  if (claims.tail_class() != TailClass::RegularlyVarying)
    throw std::domain_error(
        "kluppelberg_approx: requires regularly varying claims with tail "
        "exponent > 1");
}

// A_t sums claims over arrivals strictly before t; an arrival exactly at t
// has probability zero, so the path times are used as-is.
std::vector<double> simulate_aggregate_values(const ArrivalModel& model,
                                              const ClaimDistribution& claims,
                                              double t,
                                              const McOptions& opts) {
  if (opts.n_paths < 1000)
    throw std::domain_error("mc_aggregate: need at least 1000 paths");
  std::vector<double> values(opts.n_paths);
  parallel_for_paths(opts.n_paths, opts.workers,
                     [&](std::uint64_t first, std::uint64_t last, int) {
                       ArrivalSequencer seq;
                       for (std::uint64_t i = first; i < last; ++i) {
                         RngStream rng(opts.seed, i);
                         seq.reset(model, t, rng);
                         double total = 0.0;
                         while (seq.next()) total += claims.sample(rng);
                         values[i] = total;
                       }
                     });
  return values;
}

EstimateReport exceedance_report(const std::vector<double>& values,
                                 double centering, double x,
                                 const McOptions& opts) {
  std::uint64_t hits = 0;
  for (double a : values)
    if (a - centering > x) ++hits;
  EstimateReport report;
  report.n_paths = opts.n_paths;
  report.seed = opts.seed;
  const double n = static_cast<double>(opts.n_paths);
  report.estimate = static_cast<double>(hits) / n;
  report.std_error = std::sqrt(report.estimate * (1.0 - report.estimate) / n);
  report.ci95 = {std::max(0.0, report.estimate - 1.96 * report.std_error),
                 std::min(1.0, report.estimate + 1.96 * report.std_error)};
  return report;
}

}  // namespace

KluppelbergApprox kluppelberg_approx(const AggregateQuery& q, double en_t) {
  require_regularly_varying(q.claims);
  if (!(q.t > 0.0)) throw std::domain_error("kluppelberg_approx: t must be > 0");
  KluppelbergApprox out;
  out.expected_count_used = en_t;
  // Nonpositive deviations are always out of regime; the tail there is 1.
  out.value = en_t * (q.x <= 0.0 ? 1.0 : q.claims.tail(q.x));
  out.in_regime = q.x >= q.gamma_floor * en_t;
  return out;
}

KluppelbergApprox kluppelberg_approx(const AggregateQuery& q) {
  const auto en = expected_count_analytic(q.model, q.t);
  if (!en)
    throw std::domain_error(
        "kluppelberg_approx: no analytic E[N_t] for this model; pass a "
        "Monte Carlo estimate explicitly");
  return kluppelberg_approx(q, *en);
}

AggregateTailResult mc_aggregate_tail(const AggregateQuery& q,
                                      const McOptions& opts) {
  const auto values =
      simulate_aggregate_values(q.model, q.claims, q.t, opts);
  const auto en_analytic = expected_count_analytic(q.model, q.t);
  double en;
  if (en_analytic) {
    en = *en_analytic;
  } else {
    // Grand mean in path-index order: deterministic for any worker count.
    double sum = 0.0;
    for (double a : values) sum += a;
    en = sum / static_cast<double>(values.size()) / q.claims.mean();
  }
  AggregateTailResult out;
  out.centering = en * q.claims.mean();
  out.approx = kluppelberg_approx(q, en);
  out.report = exceedance_report(values, out.centering, q.x, opts);
  out.report.asymptotic = out.approx.value;
  if (out.approx.value > 0.0)
    out.report.ratio = out.report.estimate / out.approx.value;
  return out;
}

std::vector<AggregateSweepRow> mc_aggregate_sweep(
    const ArrivalModel& model, const ClaimDistribution& claims, double t,
    std::span<const double> x_grid, double gamma_floor,
    const McOptions& opts) {
  const auto values = simulate_aggregate_values(model, claims, t, opts);
  const auto en_analytic = expected_count_analytic(model, t);
  double en;
  if (en_analytic) {
    en = *en_analytic;
  } else {
    double sum = 0.0;
    for (double a : values) sum += a;
    en = sum / static_cast<double>(values.size()) / claims.mean();
  }
  const double centering = en * claims.mean();
  std::vector<AggregateSweepRow> rows;
  rows.reserve(x_grid.size());
  for (double x : x_grid) {
    AggregateQuery q{model, claims, t, x, gamma_floor};
    AggregateSweepRow row;
    row.x = x;
    row.approx = kluppelberg_approx(q, en);
    row.report = exceedance_report(values, centering, x, opts);
    row.report.asymptotic = row.approx.value;
    if (row.approx.value > 0.0)
      row.report.ratio = row.report.estimate / row.approx.value;
    rows.push_back(std::move(row));
  }
  return rows;
}

A2Report verify_assumption_a2(const ArrivalModel& model,
                              const RateFunction& rate,
                              const McOptions& opts) {
  A2Report report;

  // (i) E[N_t] finite for all t: exact where known, linear bound otherwise.
  const double t_ref = 1000.0;
  if (auto en = expected_count_analytic(model, t_ref)) {
    report.en_t_reference = *en;
    report.en_t_is_exact = true;
    report.clause_i = std::isfinite(*en);
  } else if (auto bound = expected_count_bound(model, t_ref)) {
    report.en_t_reference = *bound;
    report.clause_i = std::isfinite(*bound);
  }

  // (ii) N_t / E[N_t] -> 1, probed at t in {100, 1000}. The reference count
  // uses mu t when nothing exact exists, so the acceptance band allows the
  // O(1/t) startup transient on top of the CI half-width.
  report.clause_ii = true;
  const double mu = model.mean_rate();
  for (double t : {100.0, 1000.0}) {
    const auto est = expected_count(model, t, opts.n_paths, opts.seed,
                                    opts.workers);
    const double reference =
        expected_count_analytic(model, t).value_or(mu * t);
    const double ratio = est.mc_mean / reference;
    const double halfwidth = 4.0 * est.std_error / reference;
    const double transient = expected_count_analytic(model, t) ? 0.0 : 5.0 / t;
    if (std::abs(ratio - 1.0) > halfwidth + transient)
      report.clause_ii = false;
    if (t == 100.0) {
      report.ratio_t100 = ratio;
      report.halfwidth_t100 = halfwidth;
    } else {
      report.ratio_t1000 = ratio;
      report.halfwidth_t1000 = halfwidth;
    }
  }

  // (iii') c = inf_{x >= 1.1 mu} I(x)/x > 0; any eps < e^c - 1 is admissible.
  const auto c = c_mu_prime(rate, 1.1 * rate.mu());
  report.c_value = c.value;
  report.clause_iii_prime = c.positive;
  report.admissible_epsilon = c.positive ? std::expm1(c.value) : 0.0;
  return report;
}

}  // namespace ruinlab
