// ruinlab: risk-process simulation and heavy-tail ruin asymptotics.
//
// Subcommands:
//   validate  <cfg>                 assumption checks, no heavy simulation
//   ruin      <cfg> [--u-grid ...]  Monte Carlo ruin probabilities + asymptotics
//   aggregate <cfg> [--x-grid ...]  centered aggregate-claims tail
//   rate-fn   <model-cfg> --x-grid  rate function table as CSV
//   simulate  <model-cfg>           one arrival path as CSV
//
// Exit codes: 0 success, 2 config error, 3 refused asymptotics (rho >= 1).

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruinlab/config.hpp"
#include "ruinlab/errors.hpp"
#include "ruinlab/ldp.hpp"
#include "ruinlab/runner.hpp"

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ruinlab::ConfigError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ruinlab::ConfigError(path + ": invalid JSON: " + e.what());
  }
  return j;
}

// A model file is either {"arrivals": {...}} or the bare tagged record.
ruinlab::ArrivalModel load_model(const std::string& path) {
  const json j = load_json(path);
  if (j.is_object() && j.contains("arrivals"))
    return ruinlab::parse_arrivals(j.at("arrivals"), "arrivals");
  return ruinlab::parse_arrivals(j, path);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(output_path, std::ios::binary | std::ios::trunc);
  if (!f) throw ruinlab::ConfigError(output_path + ": cannot open for writing");
  f << text;
}

int run_experiment(const std::string& cfg_path,
                   const std::vector<double>& u_grid_override,
                   const std::vector<double>& x_grid_override,
                   const std::string& output_override, int workers_override,
                   std::uint64_t paths_override, std::int64_t seed_override,
                   double t_override, ruinlab::ExperimentMode expect_mode) {
  ruinlab::ExperimentSpec spec = ruinlab::load_config(cfg_path);
  if (spec.mode != expect_mode)
    throw ruinlab::ConfigError(cfg_path + ": config mode does not match the subcommand");
  if (!u_grid_override.empty()) spec.u_grid = u_grid_override;
  if (!x_grid_override.empty()) spec.x_grid = x_grid_override;
  if (!output_override.empty()) spec.output_path = output_override;
  if (workers_override > 0) spec.workers = workers_override;
  if (paths_override > 0) spec.n_paths = paths_override;
  if (seed_override >= 0) spec.seed = static_cast<std::uint64_t>(seed_override);
  if (t_override > 0) spec.t = t_override;

  const ruinlab::RunResult result = ruinlab::run(spec);
  if (spec.output_path.empty()) {
    std::cout << result.csv_text;
  } else {
    std::cerr << "wrote " << result.csv_path << " (+ sidecar) in "
              << result.wall_seconds << " s\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risk-process ruin and aggregate-claims laboratory"};
  app.require_subcommand(1);

  std::string cfg_path, output_path;
  std::vector<double> u_grid, x_grid;
  int workers = 0;
  std::uint64_t n_paths = 0;
  std::int64_t seed = -1;
  double horizon = 0.0, t_value = 0.0;

  auto* validate = app.add_subcommand("validate", "run assumption checks");
  validate->add_option("config", cfg_path)->required();

  auto* ruin = app.add_subcommand("ruin", "Monte Carlo ruin probabilities");
  ruin->add_option("config", cfg_path)->required();
  ruin->add_option("--u-grid", u_grid)->delimiter(',');
  ruin->add_option("--output", output_path);
  ruin->add_option("--workers", workers);
  ruin->add_option("--paths", n_paths);
  ruin->add_option("--seed", seed);

  auto* aggregate = app.add_subcommand("aggregate", "aggregate-claims tail");
  aggregate->add_option("config", cfg_path)->required();
  aggregate->add_option("--x-grid", x_grid)->delimiter(',');
  aggregate->add_option("--t", t_value);
  aggregate->add_option("--output", output_path);
  aggregate->add_option("--workers", workers);
  aggregate->add_option("--paths", n_paths);
  aggregate->add_option("--seed", seed);

  auto* rate_fn = app.add_subcommand("rate-fn", "rate function table");
  rate_fn->add_option("model", cfg_path)->required();
  rate_fn->add_option("--x-grid", x_grid)->delimiter(',')->required();
  rate_fn->add_option("--output", output_path);

  auto* simulate_cmd = app.add_subcommand("simulate", "emit one arrival path");
  simulate_cmd->add_option("model", cfg_path)->required();
  simulate_cmd->add_option("--horizon", horizon)->required();
  simulate_cmd->add_option("--seed", seed)->required();
  simulate_cmd->add_option("--output", output_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) {
      const ruinlab::ExperimentSpec spec = ruinlab::load_config(cfg_path);
      const ruinlab::ValidationReport report = ruinlab::validate_spec(spec);
      std::cout << report.to_table();
      return 0;
    }
    if (app.got_subcommand(ruin))
      return run_experiment(cfg_path, u_grid, {}, output_path, workers,
                            n_paths, seed, 0.0, ruinlab::ExperimentMode::Ruin);
    if (app.got_subcommand(aggregate))
      return run_experiment(cfg_path, {}, x_grid, output_path, workers,
                            n_paths, seed, t_value,
                            ruinlab::ExperimentMode::Aggregate);
    if (app.got_subcommand(rate_fn)) {
      const ruinlab::ArrivalModel model = load_model(cfg_path);
      const ruinlab::RateFunction rate = ruinlab::rate_function_for(model);
      std::string csv = "x,rate\n";
      for (double x : x_grid) csv += fmt(x) + "," + fmt(rate(x)) + "\n";
      emit(csv, output_path);
      return 0;
    }
    if (app.got_subcommand(simulate_cmd)) {
      const ruinlab::ArrivalModel model = load_model(cfg_path);
      ruinlab::RngStream rng(static_cast<std::uint64_t>(seed), 0);
      const ruinlab::ArrivalPath path =
          ruinlab::simulate(model, horizon, rng);
      emit(path.to_csv(), output_path);
      return 0;
    }
  } catch (const ruinlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ruinlab::RefusalError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
