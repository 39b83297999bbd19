#include "ruinlab/config.hpp"

#include <fstream>

#include "ruinlab/errors.hpp"

namespace ruinlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw ConfigError(where + ": " + why);
}

const json& member(const json& j, const std::string& where,
                   const std::string& key) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "required field is missing");
  return *it;
}

double number(const json& j, const std::string& where,
              const std::string& key) {
  const json& v = member(j, where, key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double positive(const json& j, const std::string& where,
                const std::string& key) {
  const double x = number(j, where, key);
  if (!(x > 0.0)) fail(where + "." + key, "must be > 0");
  return x;
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) fail(where, "expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> increasing_grid(const json& v, const std::string& where) {
  auto grid = number_list(v, where);
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      fail(where, "grid must be strictly increasing");
  return grid;
}

template <typename F>
auto rewrap(const std::string& where, F&& make) {
  // Route domain-type constructor failures into precise config errors.
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

}  // namespace

Kernel parse_kernel(const json& j, const std::string& where) {
  const json& type = member(j, where, "type");
  if (type == "exp") {
    const double a = positive(j, where, "a");
    const double b = positive(j, where, "b");
    return rewrap(where, [&] { return Kernel::exponential(a, b); });
  }
  if (type == "tabulated") {
    auto ts = number_list(member(j, where, "t"), where + ".t");
    auto vs = number_list(member(j, where, "v"), where + ".v");
    return rewrap(where, [&] {
      return Kernel::tabulated(std::move(ts), std::move(vs));
    });
  }
  fail(where + ".type", "unknown kernel type (want exp | tabulated)");
}

ClaimDistribution parse_claims(const json& j, const std::string& where) {
  const json& family = member(j, where, "family");
  if (family == "pareto") {
    const double alpha = positive(j, where, "alpha");
    const double xm = positive(j, where, "xm");
    return rewrap(where, [&] { return ClaimDistribution::pareto(alpha, xm); });
  }
  if (family == "lognormal") {
    const double mu = number(j, where, "mu");
    const double sigma = positive(j, where, "sigma");
    return rewrap(where,
                  [&] { return ClaimDistribution::lognormal(mu, sigma); });
  }
  if (family == "weibull") {
    const double shape = positive(j, where, "shape");
    const double scale = positive(j, where, "scale");
    return rewrap(where,
                  [&] { return ClaimDistribution::weibull(shape, scale); });
  }
  if (family == "exponential") {
    const double rate = positive(j, where, "rate");
    return rewrap(where, [&] { return ClaimDistribution::exponential(rate); });
  }
  fail(where + ".family",
       "unknown family (want pareto | lognormal | weibull | exponential)");
}

ArrivalModel parse_arrivals(const json& j, const std::string& where) {
  const json& kind = member(j, where, "kind");
  if (kind == "poisson") {
    const double lambda = positive(j, where, "lambda");
    return rewrap(where, [&] { return ArrivalModel::poisson(lambda); });
  }
  if (kind == "hawkes") {
    const double nu = positive(j, where, "nu");
    Kernel h = parse_kernel(member(j, where, "kernel"), where + ".kernel");
    if (!(h.l1_norm() < 1.0))
      fail(where + ".kernel", "Hawkes kernel L1 norm " +
                                  std::to_string(h.l1_norm()) +
                                  " >= 1 (subcriticality violated)");
    return rewrap(where,
                  [&] { return ArrivalModel::hawkes(nu, std::move(h)); });
  }
  if (kind == "cox") {
    const double nu = positive(j, where, "nu");
    const double gamma = positive(j, where, "gamma");
    Kernel g = parse_kernel(member(j, where, "kernel"), where + ".kernel");
    CoxBaseline base = CoxBaseline::constant(nu);
    if (j.contains("nu0") || j.contains("relax")) {
      const double nu0 = positive(j, where, "nu0");
      const double relax = positive(j, where, "relax");
      base = CoxBaseline::relaxing(nu, nu0, relax);
    }
    return rewrap(where, [&] {
      return ArrivalModel::cox_shot_noise(base, gamma, std::move(g));
    });
  }
  if (kind == "self_correcting") {
    const json& fn = member(j, where, "rate_fn");
    const std::string fn_where = where + ".rate_fn";
    const json& type = member(fn, fn_where, "type");
    RateCurve curve = RateCurve::logistic(0.5, 2.0);
    if (type == "clamped_exp") {
      const double lm = positive(fn, fn_where, "lambda_minus");
      const double lp = positive(fn, fn_where, "lambda_plus");
      curve = rewrap(fn_where, [&] { return RateCurve::clamped_exp(lm, lp); });
    } else if (type == "logistic") {
      const double lm = positive(fn, fn_where, "lambda_minus");
      const double lp = positive(fn, fn_where, "lambda_plus");
      const double slope =
          fn.contains("slope") ? positive(fn, fn_where, "slope") : 1.0;
      const double center =
          fn.contains("center") ? number(fn, fn_where, "center") : 0.0;
      curve = rewrap(fn_where, [&] {
        return RateCurve::logistic(lm, lp, slope, center);
      });
    } else if (type == "tabulated") {
      auto zs = number_list(member(fn, fn_where, "z"), fn_where + ".z");
      auto vs = number_list(member(fn, fn_where, "v"), fn_where + ".v");
      curve = rewrap(fn_where, [&] {
        return RateCurve::tabulated(std::move(zs), std::move(vs));
      });
    } else {
      fail(fn_where + ".type",
           "unknown rate_fn type (want clamped_exp | logistic | tabulated)");
    }
    return ArrivalModel::self_correcting(std::move(curve));
  }
  fail(where + ".kind",
       "unknown kind (want poisson | hawkes | cox | self_correcting)");
}

ExperimentSpec parse_config(const json& j, const std::string& source_name) {
  if (!j.is_object()) fail(source_name, "config root must be a JSON object");
  ExperimentSpec spec;
  spec.raw = j;
  spec.name = j.contains("name") ? j.at("name").get<std::string>()
                                 : std::string("experiment");

  // Reproducibility is mandatory: a seed must be spelled out.
  const json& seed = member(j, source_name, "seed");
  if (!seed.is_number_integer() || seed.get<std::int64_t>() < 0)
    fail(source_name + ".seed", "expected a non-negative integer seed");
  spec.seed = seed.get<std::uint64_t>();

  const double n_paths = number(j, source_name, "n_paths");
  if (!(n_paths >= 1.0)) fail(source_name + ".n_paths", "must be >= 1");
  spec.n_paths = static_cast<std::uint64_t>(n_paths);

  if (j.contains("workers")) {
    const double w = number(j, source_name, "workers");
    if (!(w >= 1.0)) fail(source_name + ".workers", "must be >= 1");
    spec.workers = static_cast<int>(w);
  }
  if (j.contains("output"))
    spec.output_path = j.at("output").get<std::string>();

  const std::string mode =
      j.contains("mode") ? j.at("mode").get<std::string>() : "ruin";
  spec.claims = parse_claims(member(j, source_name, "claims"), "claims");
  spec.arrivals = parse_arrivals(member(j, source_name, "arrivals"), "arrivals");

  if (mode == "ruin") {
    spec.mode = ExperimentMode::Ruin;
    spec.premium_rate = positive(j, source_name, "premium_rate");
    if (j.contains("u_grid"))
      spec.u_grid = increasing_grid(j.at("u_grid"), source_name + ".u_grid");
    else if (j.contains("u"))
      spec.u_grid = {number(j, source_name, "u")};
    else
      fail(source_name, "ruin mode needs either u or u_grid");
    for (double u : spec.u_grid)
      if (u < 0.0) fail(source_name + ".u_grid", "reserves must be >= 0");
    if (j.contains("z_grid"))
      spec.z_grid = increasing_grid(j.at("z_grid"), source_name + ".z_grid");
    else if (j.contains("horizon"))
      spec.z_grid = {positive(j, source_name, "horizon")};
    for (double z : spec.z_grid)
      if (!(z > 0.0)) fail(source_name + ".z_grid", "horizons must be > 0");
  } else if (mode == "aggregate") {
    spec.mode = ExperimentMode::Aggregate;
    spec.t = positive(j, source_name, "t");
    if (j.contains("x_grid"))
      spec.x_grid = increasing_grid(j.at("x_grid"), source_name + ".x_grid");
    else if (j.contains("x"))
      spec.x_grid = {number(j, source_name, "x")};
    else
      fail(source_name, "aggregate mode needs either x or x_grid");
    if (j.contains("gamma_floor"))
      spec.gamma_floor = positive(j, source_name, "gamma_floor");
  } else {
    fail(source_name + ".mode", "unknown mode (want ruin | aggregate)");
  }
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  return parse_config(j, path);
}

json claims_to_json(const ClaimDistribution& c) {
  switch (c.family()) {
    case ClaimFamily::Pareto:
      return {{"family", "pareto"}, {"alpha", c.param1()}, {"xm", c.param2()}};
    case ClaimFamily::Lognormal:
      return {{"family", "lognormal"}, {"mu", c.param1()}, {"sigma", c.param2()}};
    case ClaimFamily::Weibull:
      return {{"family", "weibull"}, {"shape", c.param1()}, {"scale", c.param2()}};
    case ClaimFamily::Exponential:
      return {{"family", "exponential"}, {"rate", c.param1()}};
  }
  return {};
}

json arrivals_to_json(const ArrivalModel& m) {
  const auto kernel_json = [](const Kernel& k) -> json {
    if (k.is_exponential())
      return {{"type", "exp"}, {"a", k.exp_a()}, {"b", k.exp_b()}};
    return {{"type", "tabulated"}, {"t", k.knots()}, {"v", k.values()}};
  };
  switch (m.kind()) {
    case ArrivalKind::Poisson:
      return {{"kind", "poisson"}, {"lambda", m.poisson_rate()}};
    case ArrivalKind::Hawkes:
      return {{"kind", "hawkes"},
              {"nu", m.hawkes_nu()},
              {"kernel", kernel_json(m.hawkes_kernel())}};
    case ArrivalKind::CoxShotNoise: {
      json j = {{"kind", "cox"},
                {"nu", m.cox_baseline().nu_inf},
                {"gamma", m.cox_gamma()},
                {"kernel", kernel_json(m.cox_kernel())}};
      if (m.cox_baseline().relax > 0.0) {
        j["nu0"] = m.cox_baseline().nu0;
        j["relax"] = m.cox_baseline().relax;
      }
      return j;
    }
    case ArrivalKind::SelfCorrecting: {
      const RateCurve& c = m.sc_curve();
      json fn;
      if (c.is_clamped_exp()) {
        fn = {{"type", "clamped_exp"},
              {"lambda_minus", c.lambda_minus()},
              {"lambda_plus", c.lambda_plus()}};
      } else if (c.is_logistic()) {
        fn = {{"type", "logistic"},
              {"lambda_minus", c.lambda_minus()},
              {"lambda_plus", c.lambda_plus()},
              {"slope", c.slope()},
              {"center", c.center()}};
      } else {
        fn = {{"type", "tabulated"}, {"z", c.knots()}, {"v", c.values()}};
      }
      return {{"kind", "self_correcting"}, {"rate_fn", fn}};
    }
  }
  return {};
}

}  // namespace ruinlab
