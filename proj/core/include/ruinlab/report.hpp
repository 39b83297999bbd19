#pragma once

#include <cstdint>
#include <optional>

namespace ruinlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// A Monte Carlo probability estimate together with the matching asymptotic
/// value when one applies.
struct EstimateReport {
  double estimate = 0.0;
  std::uint64_t n_paths = 0;
  double std_error = 0.0;
  Interval ci95;
  std::uint64_t seed = 0;
  std::optional<double> asymptotic;
  std::optional<double> ratio;  // estimate / asymptotic

  std::optional<double> horizon;      // simulation horizon used, if finite
  bool truncated_horizon = false;     // infinite-horizon lower-bound estimator
  bool net_profit_warning = false;    // simulated with rho >= 1
};

struct McOptions {
  std::uint64_t n_paths = 10'000;
  std::uint64_t seed = 0;
  int workers = 1;
};

}  // namespace ruinlab
