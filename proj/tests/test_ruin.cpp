#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ruinlab/errors.hpp"
#include "ruinlab/ruin.hpp"

using namespace ruinlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Poisson(1) arrivals, Exp(1) claims, p = 2: the classical closed form
// psi(u) = rho e^{-(1-rho) u / E[C]} is an exact external oracle.
RiskConfig oracle_config(double u) {
  return RiskConfig{u, 2.0, ClaimDistribution::exponential(1.0),
                    ArrivalModel::poisson(1.0)};
}
double oracle_psi(double u) { return 0.5 * std::exp(-0.5 * u); }

RiskConfig hawkes_pareto_config(double u) {
  return RiskConfig{u, 6.0, ClaimDistribution::pareto(2.0, 1.0),
                    ArrivalModel::hawkes(1.0, Kernel::exponential(0.5, 1.0))};
}

}  // namespace

TEST_CASE("rho derivation", "[ruin]") {
  REQUIRE_THAT(oracle_config(2.0).rho(), WithinRel(0.5, 1e-12));
  REQUIRE_THAT(hawkes_pareto_config(1.0).rho(), WithinRel(0.5, 1e-12));
}

TEST_CASE("single-path ruin walk", "[ruin]") {
  // Overwhelming premium and reserve: no plausible ruin.
  RiskConfig safe{1e6, 1e6, ClaimDistribution::pareto(2.0, 1.0),
                  ArrivalModel::poisson(1.0)};
  RngStream rng(1, 0);
  const auto res = simulate_ruin_path(safe, 10.0, rng);
  REQUIRE_FALSE(res.ruined);
  REQUIRE(res.min_surplus > 0.0);

  // u = 0 and a negligible premium: the first claim ruins, at its instant.
  RiskConfig broke{0.0, 1e-9, ClaimDistribution::pareto(2.0, 1.0),
                   ArrivalModel::poisson(1.0)};
  RngStream rng2(2, 0);
  const auto res2 = simulate_ruin_path(broke, 1000.0, rng2);
  REQUIRE(res2.ruined);
  REQUIRE(res2.ruin_time.has_value());
  RngStream rng3(2, 0);
  const auto path = simulate(ArrivalModel::poisson(1.0), 1000.0, rng3);
  REQUIRE_THAT(*res2.ruin_time, WithinRel(path.times.front(), 1e-12));
}

TEST_CASE("finite-horizon Monte Carlo ruin", "[ruin]") {
  const RiskConfig cfg = oracle_config(2.0);
  McOptions opts{20'000, 77, 1};

  // A vanishing window holds no arrivals, hence no ruin.
  REQUIRE(mc_ruin_finite(cfg, 1e-12, McOptions{1000, 1, 1}).estimate == 0.0);

  const EstimateReport r10 = mc_ruin_finite(cfg, 10.0, opts);
  const EstimateReport r100 = mc_ruin_finite(cfg, 100.0, opts);
  // Nested events under common random numbers.
  REQUIRE(r10.estimate <= r100.estimate);
  REQUIRE(r10.ci95.contains(r10.estimate));
  REQUIRE_THAT(r10.std_error,
               WithinRel(std::sqrt(r10.estimate * (1.0 - r10.estimate) /
                                   static_cast<double>(opts.n_paths)),
                         1e-12));
  REQUIRE_FALSE(r10.net_profit_warning);

  // psi(u, z) is non-increasing in u on common random numbers.
  double prev = 1.0;
  for (double u : {1.0, 2.0, 4.0}) {
    const auto r = mc_ruin_finite(oracle_config(u), 50.0, opts);
    REQUIRE(r.estimate <= prev);
    prev = r.estimate;
  }
}

TEST_CASE("infinite-horizon estimator matches the closed-form oracle", "[ruin]") {
  McOptions opts{20'000, 2024, 1};
  for (double u : {2.0, 4.0}) {
    const EstimateReport r = mc_ruin_infinite(oracle_config(u), opts);
    REQUIRE(r.truncated_horizon);
    REQUIRE(*r.horizon >= 20.0 * u / (2.0 * 0.5) - 1e-9);
    REQUIRE_THAT(r.estimate, WithinAbs(oracle_psi(u), 4.0 * r.std_error));
  }
  // Very large reserve: estimate collapses to zero with a consistent CI.
  const EstimateReport far = mc_ruin_infinite(oracle_config(60.0),
                                              McOptions{1000, 5, 1});
  REQUIRE(far.estimate == 0.0);
  REQUIRE(far.ci95.hi < 1e-2);
}

TEST_CASE("asymptotic formulas", "[ruin]") {
  // rho = 0.5 Pareto(2,1): prefactor 1, value = integrated tail.
  RiskConfig cfg{10.0, 3.0, ClaimDistribution::pareto(2.0, 1.0),
                 ArrivalModel::poisson(1.0)};
  REQUIRE_THAT(asymptotic_infinite(cfg), WithinRel(0.01 / 3.0, 1e-12));

  // Hawkes prefactor equals the direct proposition algebra.
  const RiskConfig hawkes = hawkes_pareto_config(50.0);
  const double direct = 1.0 * 1.5 / (6.0 * 0.5 - 1.5);  // nu E[C] / (p(1-h)-nu E[C])
  REQUIRE_THAT(asymptotic_infinite(hawkes) /
                   hawkes.claims.integrated_tail(50.0),
               WithinRel(direct, 1e-12));

  // Premium blowing up drives the prefactor to zero.
  RiskConfig rich = cfg;
  rich.premium_rate = 1e9;
  REQUIRE(asymptotic_infinite(rich) < 1e-8);

  // Finite-horizon branches.
  const auto rv = asymptotic_finite(hawkes_pareto_config(50.0), 2.0);
  REQUIRE_THAT(rv.value / hawkes.claims.integrated_tail(50.0),
               WithinRel(1.0 - std::pow(1.5, -2.0), 1e-12));
  REQUIRE_THAT(rv.horizon, WithinRel(25.0 * 2.0, 1e-12));  // e(50) = 25

  RiskConfig gumbel{10.0, 4.0, ClaimDistribution::weibull(0.5, 1.0),
                    ArrivalModel::poisson(1.0)};
  REQUIRE_THAT(gumbel.rho(), WithinRel(0.5, 1e-12));
  const auto gb = asymptotic_finite(gumbel, 2.0);
  REQUIRE_THAT(gb.value / gumbel.claims.integrated_tail(10.0),
               WithinRel(1.0 - std::exp(-1.0), 1e-12));

  // T -> infinity recovers the infinite-horizon value (both branches).
  REQUIRE_THAT(asymptotic_finite(hawkes, 1e6).value,
               WithinRel(asymptotic_infinite(hawkes), 1e-6));
  REQUIRE_THAT(asymptotic_finite(gumbel, 1e6).value,
               WithinRel(asymptotic_infinite(gumbel), 1e-6));
}

TEST_CASE("asymptotics refuse outside their domain", "[ruin]") {
  RiskConfig heavy_load{1.0, 1.0, ClaimDistribution::pareto(2.0, 1.0),
                        ArrivalModel::poisson(1.0)};  // rho = 1.5
  REQUIRE(heavy_load.rho() >= 1.0);
  REQUIRE_THROWS_AS(asymptotic_infinite(heavy_load), RefusalError);
  REQUIRE_THROWS_AS(mc_ruin_infinite(heavy_load, McOptions{1000, 1, 1}),
                    RefusalError);
  const auto r = mc_ruin_finite(heavy_load, 10.0, McOptions{1000, 1, 1});
  REQUIRE(r.net_profit_warning);
  REQUIRE_FALSE(r.asymptotic.has_value());

  REQUIRE_THROWS_AS(asymptotic_infinite(oracle_config(1.0)),
                    std::domain_error);  // light-tailed claims
  REQUIRE_THROWS_AS(asymptotic_finite(oracle_config(1.0), 1.0),
                    std::domain_error);
}

TEST_CASE("finite-horizon report carries the matching asymptotic", "[ruin]") {
  const RiskConfig cfg = hawkes_pareto_config(50.0);
  // z = e(50) * 2 = 50.
  const EstimateReport r = mc_ruin_finite(cfg, 50.0, McOptions{500, 3, 1});
  REQUIRE(r.asymptotic.has_value());
  const double expected =
      1.0 * (1.0 - std::pow(1.5, -2.0)) * cfg.claims.integrated_tail(50.0);
  REQUIRE_THAT(*r.asymptotic, WithinRel(expected, 1e-12));
}

TEST_CASE("model-specific prefactor formulas agree with rho/(1-rho)", "[ruin]") {
  RngStream rng(31337, 0);
  int checked = 0;
  while (checked < 100) {
    const double pick = rng.uniform01();
    double mu, direct_denominator_scale = 1.0;
    ClaimDistribution claims = ClaimDistribution::pareto(
        0.5 + 3.0 * rng.uniform01(), 0.25 + 2.0 * rng.uniform01());
    switch (static_cast<int>(rng.uniform01() * 4.0)) {
      case 1:
        claims = ClaimDistribution::lognormal(rng.uniform01(),
                                              0.2 + rng.uniform01());
        break;
      case 2:
        claims = ClaimDistribution::weibull(0.2 + 0.7 * rng.uniform01(),
                                            0.5 + rng.uniform01());
        break;
      case 3:
        claims = ClaimDistribution::exponential(0.5 + rng.uniform01());
        break;
      default:
        break;
    }
    double direct;
    const double ec = claims.mean();
    double p;
    if (pick < 1.0 / 3.0) {
      const double nu = 0.2 + 2.0 * rng.uniform01();
      const double h1 = 0.05 + 0.9 * rng.uniform01();
      mu = nu / (1.0 - h1);
      p = mu * ec / (0.05 + 0.9 * rng.uniform01());  // rho in (0.05, 0.95)
      direct = nu * ec / (p * (1.0 - h1) - nu * ec);
      direct_denominator_scale = p * (1.0 - h1) - nu * ec;
    } else if (pick < 2.0 / 3.0) {
      const double nu = 0.2 + 2.0 * rng.uniform01();
      const double gamma = 0.2 + 2.0 * rng.uniform01();
      const double g1 = 0.1 + 2.0 * rng.uniform01();
      mu = nu + gamma * g1;
      p = mu * ec / (0.05 + 0.9 * rng.uniform01());
      direct = mu * ec / (p - mu * ec);
      direct_denominator_scale = p - mu * ec;
    } else {
      mu = 1.0;
      p = ec / (0.05 + 0.9 * rng.uniform01());
      direct = ec / (p - ec);
      direct_denominator_scale = p - ec;
    }
    if (direct_denominator_scale <= 0.0) continue;  // inadmissible draw
    const double rho = mu * ec / p;
    REQUIRE(rho < 1.0);
    REQUIRE_THAT(rho / (1.0 - rho), WithinRel(direct, 1e-12));
    ++checked;
  }
}

TEST_CASE("drift diagnostic", "[ruin]") {
  const RiskConfig cfg = oracle_config(0.0);  // Poisson(1), p = 2, mu = 1

  // Exponential-type decay: decreasing with concave log-tail.
  {
    const std::vector<double> grid{2.0, 4.0, 8.0, 16.0};
    const auto diag =
        drift_diagnostic(cfg, 0.5, grid, 300.0, McOptions{40'000, 9, 1});
    REQUIRE(diag.tail_prob.size() == 4);
    for (std::size_t i = 1; i < 4; ++i)
      REQUIRE(diag.tail_prob[i] < diag.tail_prob[i - 1]);
    REQUIRE(diag.tail_prob[3] > 0.0);
    const auto slope = [&](std::size_t i) {
      return (std::log(diag.tail_prob[i + 1]) - std::log(diag.tail_prob[i])) /
             (diag.y_grid[i + 1] - diag.y_grid[i]);
    };
    REQUIRE(slope(1) <= slope(0) + 0.05);
    REQUIRE(slope(2) <= slope(1) + 0.05);
  }

  // Ratio to the Pareto integrated tail is driven toward zero.
  {
    RiskConfig pareto_cfg = cfg;
    pareto_cfg.claims = ClaimDistribution::pareto(2.0, 1.0);
    const std::vector<double> grid{2.0, 4.0, 8.0, 16.0};
    const auto diag = drift_diagnostic(pareto_cfg, 0.85, grid, 300.0,
                                       McOptions{100'000, 10, 1});
    for (std::size_t i = 1; i < 4; ++i)
      REQUIRE(diag.ratio_to_integrated_tail[i] <=
              diag.ratio_to_integrated_tail[i - 1] + 1e-12);
    REQUIRE(diag.ratio_to_integrated_tail[2] <
            0.5 * diag.ratio_to_integrated_tail[0]);
  }

  // Larger eps shrinks the sup: P(Y >= 1) is monotone in eps.
  {
    const std::vector<double> grid{1.0};
    const auto lo =
        drift_diagnostic(cfg, 0.5, grid, 200.0, McOptions{20'000, 11, 1});
    const auto hi =
        drift_diagnostic(cfg, 1.5, grid, 200.0, McOptions{20'000, 11, 1});
    REQUIRE(hi.tail_prob[0] < lo.tail_prob[0]);
  }

  REQUIRE_THROWS_AS(
      drift_diagnostic(cfg, 2.5, std::vector<double>{1.0}, 100.0,
                       McOptions{1000, 1, 1}),
      std::domain_error);  // eps >= p / mu
}
