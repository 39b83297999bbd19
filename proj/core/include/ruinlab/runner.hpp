#pragma once

#include <string>
#include <vector>

#include "ruinlab/config.hpp"

namespace ruinlab {

std::string version_string();

struct ValidationRow {
  std::string clause;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool all_pass = true;
  bool asymptotics_allowed = true;  // net profit condition holds

  std::string to_table() const;
};

/// Assumption checks (rate-function structure, net profit, aggregate-claims
/// clauses) run before any expensive simulation. Reports failures; never
/// throws for a failed clause.
ValidationReport validate_spec(const ExperimentSpec& spec,
                               std::uint64_t mc_paths = 400);

struct RunResult {
  std::string csv_text;
  std::string csv_path;      // empty when the spec has no output path
  std::string sidecar_path;  // likewise
  double wall_seconds = 0.0;
};

/// Executes the spec's sweep. The CSV bytes are a pure function of
/// (config, seed): workers only change the wall time. Output is written to a
/// temporary file and renamed on success; a JSON sidecar records the spec,
/// version and timing.
RunResult run(const ExperimentSpec& spec);

}  // namespace ruinlab
