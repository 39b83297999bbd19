#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ruinlab/arrivals.hpp"
#include "ruinlab/claims.hpp"
#include "ruinlab/report.hpp"
#include "ruinlab/rng.hpp"

namespace ruinlab {

/// Risk process U_t = u + p t - sum of claims at the arrival instants.
struct RiskConfig {
  double u = 0.0;             // initial reserve
  double premium_rate = 1.0;  // p
  ClaimDistribution claims;
  ArrivalModel arrivals;

  /// rho = mu E[C] / p; the net profit condition is rho < 1.
  double rho() const {
    return arrivals.mean_rate() * claims.mean() / premium_rate;
  }
};

struct RuinPathResult {
  bool ruined = false;
  std::optional<double> ruin_time;
  double min_surplus = 0.0;
};

/// One path on [0, horizon]. Ruin is checked at claim instants only, which
/// is exact because the surplus increases between claims.
RuinPathResult simulate_ruin_path(const RiskConfig& cfg, double horizon,
                                  RngStream& rng);

/// Finite-horizon ruin probability psi(u, z) by Monte Carlo. Fills the
/// asymptotic field (scaled horizon T = z / e(u)) whenever rho < 1 and the
/// claims are heavy-tailed; simulating with rho >= 1 only sets a warning.
EstimateReport mc_ruin_finite(const RiskConfig& cfg, double z,
                              const McOptions& opts);

/// Infinite-horizon ruin probability psi(u), estimated on an adaptive
/// truncation horizon z* with p (1 - rho) z* >= 20 u. A lower-bound
/// estimator; refuses (RefusalError) when rho >= 1 since psi = 1.
EstimateReport mc_ruin_infinite(const RiskConfig& cfg, const McOptions& opts);

/// The truncation horizon mc_ruin_infinite would use.
double truncation_horizon(const RiskConfig& cfg);

/// Infinite-horizon first-order asymptotic (rho/(1-rho)) * Bbar_0(u).
/// Throws RefusalError for rho >= 1 and std::domain_error for light tails.
double asymptotic_infinite(const RiskConfig& cfg);

struct FiniteAsymptotic {
  double value = 0.0;    // prefactor * bracket * Bbar_0(u)
  double horizon = 0.0;  // the wall-clock horizon z = e(u) T
};

/// Finite-horizon asymptotic at scaled time T. The regularly varying branch
/// uses [1 - (1 + (1-rho)T/alpha)^-alpha], the Gumbel branch
/// [1 - e^{-(1-rho)T}].
FiniteAsymptotic asymptotic_finite(const RiskConfig& cfg, double T);

struct DriftDiagnostic {
  double epsilon = 0.0;
  double horizon = 0.0;
  std::uint64_t n_paths = 0;
  std::vector<double> y_grid;
  std::vector<double> tail_prob;                 // P(Y_eps >= y)
  std::vector<double> ratio_to_integrated_tail;  // tail_prob / Bbar_0(y)
};

/// Empirical tail of Y_eps = sup_n { n (p/mu - eps) - p sum_{i<=n} T_i },
/// the drift functional whose tail must vanish relative to Bbar_0.
DriftDiagnostic drift_diagnostic(const RiskConfig& cfg, double epsilon,
                                 std::span<const double> y_grid,
                                 double horizon, const McOptions& opts);

}  // namespace ruinlab
