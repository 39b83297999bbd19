#include "ruinlab/ruin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ruinlab/errors.hpp"
#include "ruinlab/parallel.hpp"

namespace ruinlab {

RuinPathResult simulate_ruin_path(const RiskConfig& cfg, double horizon,
                                  RngStream& rng) {
  ArrivalSequencer seq;
  seq.reset(cfg.arrivals, horizon, rng);
  RuinPathResult result;
  result.min_surplus = cfg.u;
  double claims_sum = 0.0;
  while (auto tau = seq.next()) {
    // Claim drawn right after its arrival so a longer horizon extends the
    // same path instead of reshuffling it.
    claims_sum += cfg.claims.sample(rng);
    const double surplus = cfg.u + cfg.premium_rate * *tau - claims_sum;
    result.min_surplus = std::min(result.min_surplus, surplus);
    if (surplus <= 0.0) {
      result.ruined = true;
      result.ruin_time = *tau;
      return result;
    }
  }
  return result;
}

namespace {

EstimateReport mc_ruin_at_horizon(const RiskConfig& cfg, double z,
                                  const McOptions& opts) {
  if (!(z > 0.0)) throw std::domain_error("mc_ruin: horizon must be > 0");
  if (opts.n_paths < 100)
    throw std::domain_error("mc_ruin: need at least 100 paths");
  std::vector<std::uint64_t> ruined(std::max(opts.workers, 1), 0);
  parallel_for_paths(opts.n_paths, opts.workers,
                     [&](std::uint64_t first, std::uint64_t last, int w) {
                       std::uint64_t hits = 0;
                       for (std::uint64_t i = first; i < last; ++i) {
                         RngStream rng(opts.seed, i);
                         if (simulate_ruin_path(cfg, z, rng).ruined) ++hits;
                       }
                       ruined[w] = hits;
                     });
  std::uint64_t hits = 0;
  for (std::uint64_t h : ruined) hits += h;

  EstimateReport report;
  report.n_paths = opts.n_paths;
  report.seed = opts.seed;
  report.horizon = z;
  const double n = static_cast<double>(opts.n_paths);
  report.estimate = static_cast<double>(hits) / n;
  report.std_error =
      std::sqrt(report.estimate * (1.0 - report.estimate) / n);
  report.ci95 = {std::max(0.0, report.estimate - 1.96 * report.std_error),
                 std::min(1.0, report.estimate + 1.96 * report.std_error)};
  report.net_profit_warning = cfg.rho() >= 1.0;
  return report;
}

}  // namespace

EstimateReport mc_ruin_finite(const RiskConfig& cfg, double z,
                              const McOptions& opts) {
  EstimateReport report = mc_ruin_at_horizon(cfg, z, opts);
  if (cfg.rho() < 1.0 &&
      cfg.claims.tail_class() != TailClass::LightTail) {
    try {
      const double T = z / cfg.claims.mean_excess(cfg.u);
      report.asymptotic = asymptotic_finite(cfg, T).value;
      if (*report.asymptotic > 0.0)
        report.ratio = report.estimate / *report.asymptotic;
    } catch (const SaturationError&) {
      // e(u) out of the representable range: leave the asymptotic empty.
    }
  }
  return report;
}

double truncation_horizon(const RiskConfig& cfg) {
  const double rho = cfg.rho();
  const double drift = cfg.premium_rate * (1.0 - rho);
  const double scale = std::max(cfg.u, cfg.claims.mean());
  return std::max(20.0 * scale / drift, 1.0);
}

EstimateReport mc_ruin_infinite(const RiskConfig& cfg, const McOptions& opts) {
  if (cfg.rho() >= 1.0)
    throw RefusalError(
        "mc_ruin_infinite: net profit condition violated (rho = " +
        std::to_string(cfg.rho()) + " >= 1), psi(u) = 1");
  const double z_star = truncation_horizon(cfg);
  EstimateReport report = mc_ruin_at_horizon(cfg, z_star, opts);
  report.truncated_horizon = true;
  if (cfg.claims.tail_class() != TailClass::LightTail) {
    report.asymptotic = asymptotic_infinite(cfg);
    if (*report.asymptotic > 0.0)
      report.ratio = report.estimate / *report.asymptotic;
  }
  return report;
}

double asymptotic_infinite(const RiskConfig& cfg) {
  const double rho = cfg.rho();
  if (rho >= 1.0)
    throw RefusalError(
        "asymptotic_infinite: net profit condition violated (rho = " +
        std::to_string(rho) + " >= 1)");
  if (cfg.claims.tail_class() == TailClass::LightTail)
    throw std::domain_error(
        "asymptotic_infinite: light-tailed claims are outside the "
        "subexponential asymptotics");
  return rho / (1.0 - rho) * cfg.claims.integrated_tail(cfg.u);
}

FiniteAsymptotic asymptotic_finite(const RiskConfig& cfg, double T) {
  const double rho = cfg.rho();
  if (rho >= 1.0)
    throw RefusalError(
        "asymptotic_finite: net profit condition violated (rho = " +
        std::to_string(rho) + " >= 1)");
  if (!(T > 0.0)) throw std::domain_error("asymptotic_finite: T must be > 0");
  double bracket;
  switch (cfg.claims.tail_class()) {
    case TailClass::RegularlyVarying: {
      const double alpha = cfg.claims.rv_alpha();
      bracket = 1.0 - std::pow(1.0 + (1.0 - rho) * T / alpha, -alpha);
      break;
    }
    case TailClass::GumbelMDA:
      bracket = 1.0 - std::exp(-(1.0 - rho) * T);
      break;
    case TailClass::LightTail:
    default:
      throw std::domain_error(
          "asymptotic_finite: light-tailed claims are outside the "
          "subexponential asymptotics");
  }
  FiniteAsymptotic out;
  out.value = rho / (1.0 - rho) * bracket * cfg.claims.integrated_tail(cfg.u);
  out.horizon = cfg.claims.mean_excess(cfg.u) * T;
  return out;
}

DriftDiagnostic drift_diagnostic(const RiskConfig& cfg, double epsilon,
                                 std::span<const double> y_grid,
                                 double horizon, const McOptions& opts) {
  const double mu = cfg.arrivals.mean_rate();
  const double p = cfg.premium_rate;
  if (!(epsilon > 0.0 && epsilon < p / mu))
    throw std::domain_error("drift_diagnostic: need 0 < eps < p / mu");
  if (y_grid.empty())
    throw std::domain_error("drift_diagnostic: need a y grid");

  const double step_gain = p / mu - epsilon;
  std::vector<std::vector<std::uint64_t>> hits(
      std::max(opts.workers, 1),
      std::vector<std::uint64_t>(y_grid.size(), 0));
  parallel_for_paths(
      opts.n_paths, opts.workers,
      [&](std::uint64_t first, std::uint64_t last, int w) {
        ArrivalSequencer seq;
        for (std::uint64_t i = first; i < last; ++i) {
          RngStream rng(opts.seed, i);
          seq.reset(cfg.arrivals, horizon, rng);
          double sup = -std::numeric_limits<double>::infinity();
          std::uint64_t n = 0;
          while (auto tau = seq.next()) {
            ++n;
            sup = std::max(sup, static_cast<double>(n) * step_gain - p * *tau);
          }
          for (std::size_t k = 0; k < y_grid.size(); ++k)
            if (sup >= y_grid[k]) ++hits[w][k];
        }
      });

  DriftDiagnostic diag;
  diag.epsilon = epsilon;
  diag.horizon = horizon;
  diag.n_paths = opts.n_paths;
  diag.y_grid.assign(y_grid.begin(), y_grid.end());
  diag.tail_prob.resize(y_grid.size());
  diag.ratio_to_integrated_tail.resize(y_grid.size());
  for (std::size_t k = 0; k < y_grid.size(); ++k) {
    std::uint64_t total = 0;
    for (const auto& h : hits) total += h[k];
    diag.tail_prob[k] =
        static_cast<double>(total) / static_cast<double>(opts.n_paths);
    const double b0 = cfg.claims.integrated_tail(y_grid[k]);
    diag.ratio_to_integrated_tail[k] =
        b0 > 0.0 ? diag.tail_prob[k] / b0
                 : std::numeric_limits<double>::infinity();
  }
  return diag;
}

}  // namespace ruinlab
