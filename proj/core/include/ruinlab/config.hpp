#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ruinlab/aggregate.hpp"
#include "ruinlab/arrivals.hpp"
#include "ruinlab/claims.hpp"
#include "ruinlab/ruin.hpp"

namespace ruinlab {

enum class ExperimentMode { Ruin, Aggregate };

/// A fully validated experiment description. Seeds are mandatory so every
/// result is reproducible; grids are finite and strictly increasing.
struct ExperimentSpec {
  std::string name = "experiment";
  ExperimentMode mode = ExperimentMode::Ruin;
  std::uint64_t seed = 0;
  std::uint64_t n_paths = 10'000;
  int workers = 1;
  std::string output_path;  // empty: caller decides what to do with rows

  ClaimDistribution claims = ClaimDistribution::exponential(1.0);
  ArrivalModel arrivals = ArrivalModel::poisson(1.0);

  // ruin mode
  double premium_rate = 1.0;
  std::vector<double> u_grid;  // at least one entry
  std::vector<double> z_grid;  // empty: infinite horizon

  // aggregate mode
  double t = 100.0;
  std::vector<double> x_grid;
  double gamma_floor = 1.0;

  nlohmann::json raw;  // verbatim config echo for the output sidecar

  RiskConfig risk_config(double u) const {
    return RiskConfig{u, premium_rate, claims, arrivals};
  }
};

/// Parse + validate a config file. Throws ConfigError naming the offending
/// field or the violated invariant.
ExperimentSpec load_config(const std::string& path);
ExperimentSpec parse_config(const nlohmann::json& j,
                            const std::string& source_name);

/// Tagged-record parsers, also used by the CLI for bare model files.
/// `where` prefixes error messages, e.g. "claims".
ClaimDistribution parse_claims(const nlohmann::json& j,
                               const std::string& where = "claims");
ArrivalModel parse_arrivals(const nlohmann::json& j,
                            const std::string& where = "arrivals");
Kernel parse_kernel(const nlohmann::json& j, const std::string& where);

nlohmann::json claims_to_json(const ClaimDistribution& c);
nlohmann::json arrivals_to_json(const ArrivalModel& m);

}  // namespace ruinlab
