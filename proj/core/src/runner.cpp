#include "ruinlab/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ruinlab/errors.hpp"
#include "ruinlab/ldp.hpp"

namespace ruinlab {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_opt(const std::optional<double>& x) {
  return x ? fmt(*x) : std::string();
}

}  // namespace

std::string version_string() {
  return std::string(RUINLAB_VERSION) + " (" + RUINLAB_GIT_REV + ")";
}

std::string ValidationReport::to_table() const {
  std::string out;
  for (const auto& row : rows) {
    out += row.pass ? "PASS  " : "FAIL  ";
    out += row.clause;
    if (!row.detail.empty()) out += "  [" + row.detail + "]";
    out += '\n';
  }
  return out;
}

ValidationReport validate_spec(const ExperimentSpec& spec,
                               std::uint64_t mc_paths) {
  ValidationReport report;
  const auto add = [&](std::string clause, bool pass, std::string detail) {
    report.all_pass = report.all_pass && pass;
    report.rows.push_back({std::move(clause), pass, std::move(detail)});
  };

  const RateFunction rate = rate_function_for(spec.arrivals);
  const A1Report a1 = verify_assumption_a1(rate);
  add("ldp: unique zero at mu", a1.zero_at_mu,
      "mu = " + fmt(a1.mu) + ", I(mu) = " + fmt(a1.value_at_mu));
  add("ldp: positive away from mu", a1.positive_off_mu, "");
  add("ldp: decreasing on [0, mu]", a1.decreasing_left, "");
  add("ldp: increasing on [mu, inf)", a1.increasing_right, "");
  add("ldp: convex on each side of mu", a1.convex_each_side, "");

  if (spec.mode == ExperimentMode::Ruin) {
    const double rho = spec.risk_config(0.0).rho();
    const bool net_profit = rho < 1.0;
    report.asymptotics_allowed = net_profit;
    add("net profit condition rho < 1", net_profit, "rho = " + fmt(rho));
    if (!net_profit)
      add("asymptotic columns", false, "disabled while rho >= 1");
  }

  McOptions opts;
  opts.n_paths = mc_paths;
  opts.seed = spec.seed;
  opts.workers = spec.workers;
  const A2Report a2 = verify_assumption_a2(spec.arrivals, rate, opts);
  add("aggregate: E[N_t] finite", a2.clause_i,
      std::string(a2.en_t_is_exact ? "exact" : "bound") +
          " E[N_1000] = " + fmt(a2.en_t_reference));
  add("aggregate: N_t / E[N_t] -> 1", a2.clause_ii,
      "ratio(100) = " + fmt(a2.ratio_t100) +
          ", ratio(1000) = " + fmt(a2.ratio_t1000));
  add("aggregate: inf I(x)/x > 0 past mu", a2.clause_iii_prime,
      "c = " + fmt(a2.c_value) +
          ", admissible eps < " + fmt(a2.admissible_epsilon));
  return report;
}

namespace {

std::string ruin_csv(const ExperimentSpec& spec) {
  std::string csv = "u,z_or_inf,mc_estimate,std_error,asymptotic,ratio,seed\n";
  McOptions opts{spec.n_paths, spec.seed, spec.workers};
  for (double u : spec.u_grid) {
    const RiskConfig cfg = spec.risk_config(u);
    if (spec.z_grid.empty()) {
      const EstimateReport r = mc_ruin_infinite(cfg, opts);
      csv += fmt(u) + ",inf," + fmt(r.estimate) + "," + fmt(r.std_error) +
             "," + fmt_opt(r.asymptotic) + "," + fmt_opt(r.ratio) + "," +
             std::to_string(r.seed) + "\n";
    } else {
      for (double z : spec.z_grid) {
        const EstimateReport r = mc_ruin_finite(cfg, z, opts);
        csv += fmt(u) + "," + fmt(z) + "," + fmt(r.estimate) + "," +
               fmt(r.std_error) + "," + fmt_opt(r.asymptotic) + "," +
               fmt_opt(r.ratio) + "," + std::to_string(r.seed) + "\n";
      }
    }
  }
  return csv;
}

std::string aggregate_csv(const ExperimentSpec& spec) {
  std::string csv = "x,mc_tail,std_error,approx,ratio,in_regime,seed\n";
  McOptions opts{spec.n_paths, spec.seed, spec.workers};
  const auto rows = mc_aggregate_sweep(spec.arrivals, spec.claims, spec.t,
                                       spec.x_grid, spec.gamma_floor, opts);
  for (const auto& row : rows) {
    csv += fmt(row.x) + "," + fmt(row.report.estimate) + "," +
           fmt(row.report.std_error) + "," + fmt(row.approx.value) + "," +
           fmt_opt(row.report.ratio) + "," +
           (row.approx.in_regime ? "1" : "0") + "," +
           std::to_string(row.report.seed) + "\n";
  }
  return csv;
}

}  // namespace

RunResult run(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.csv_text = spec.mode == ExperimentMode::Ruin ? ruin_csv(spec)
                                                      : aggregate_csv(spec);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (!spec.output_path.empty()) {
    namespace fs = std::filesystem;
    const fs::path out(spec.output_path);
    const fs::path tmp(spec.output_path + ".tmp");
    try {
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError(tmp.string() + ": cannot open for writing");
        f << result.csv_text;
        if (!f.good())
          throw ConfigError(tmp.string() + ": write failed");
      }
      fs::rename(tmp, out);
    } catch (...) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw;
    }
    result.csv_path = out.string();

    nlohmann::json sidecar = {
        {"tool", "ruinlab"},
        {"version", version_string()},
        {"spec", spec.raw},
        {"seed", spec.seed},
        {"n_paths", spec.n_paths},
        {"workers", spec.workers},
        {"wall_time_seconds", result.wall_seconds},
        {"csv", result.csv_path},
    };
    result.sidecar_path = spec.output_path + ".meta.json";
    std::ofstream meta(result.sidecar_path, std::ios::trunc);
    meta << sidecar.dump(2) << '\n';
  }
  return result;
}

}  // namespace ruinlab
