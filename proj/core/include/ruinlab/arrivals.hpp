#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ruinlab/kernel.hpp"
#include "ruinlab/rng.hpp"

namespace ruinlab {

/// Deterministic Cox baseline nu(t) = nu_inf + (nu0 - nu_inf) e^{-relax t};
/// constant when nu0 == nu_inf.
struct CoxBaseline {
  double nu_inf = 1.0;
  double nu0 = 1.0;
  double relax = 0.0;

  static CoxBaseline constant(double nu) { return {nu, nu, 0.0}; }
  static CoxBaseline relaxing(double nu_inf, double nu0, double rate) {
    return {nu_inf, nu0, rate};
  }

  double operator()(double t) const;
  double sup() const;
  double integral_to(double t) const;
};

/// Monotone intensity map z -> lambda(z) for the self-correcting process,
/// with limits lambda_minus < 1 < lambda_plus.
class RateCurve {
 public:
  /// lambda(z) = clamp(e^z, lambda_minus, lambda_plus).
  static RateCurve clamped_exp(double lambda_minus, double lambda_plus);
  /// lambda(z) = lm + (lp - lm) / (1 + e^{-slope (z - center)}).
  static RateCurve logistic(double lambda_minus, double lambda_plus,
                            double slope = 1.0, double center = 0.0);
  /// Piecewise-linear non-decreasing table, flat beyond its ends.
  static RateCurve tabulated(std::vector<double> zs, std::vector<double> vals);

  double operator()(double z) const;
  double lambda_minus() const { return lm_; }
  double lambda_plus() const { return lp_; }

 private:
  RateCurve() = default;

  enum class Form { ClampedExp, Logistic, Tabulated } form_ = Form::ClampedExp;
  double lm_ = 0.5, lp_ = 2.0, slope_ = 1.0, center_ = 0.0;
  std::vector<double> zs_, vs_;

 public:
  // Introspection for config round-trips.
  bool is_clamped_exp() const { return form_ == Form::ClampedExp; }
  bool is_logistic() const { return form_ == Form::Logistic; }
  double slope() const { return slope_; }
  double center() const { return center_; }
  const std::vector<double>& knots() const { return zs_; }
  const std::vector<double>& values() const { return vs_; }
};

enum class ArrivalKind { Poisson, Hawkes, CoxShotNoise, SelfCorrecting };

/// One of the four arrival processes, with parameters validated at
/// construction. Immutable and shareable across workers.
class ArrivalModel {
 public:
  static ArrivalModel poisson(double lambda);
  static ArrivalModel hawkes(double nu, Kernel h);
  static ArrivalModel cox_shot_noise(CoxBaseline baseline, double gamma,
                                     Kernel g);
  static ArrivalModel self_correcting(RateCurve lambda_fn);

  ArrivalKind kind() const { return kind_; }
  std::string kind_name() const;

  /// The LLN limit of N_t / t.
  double mean_rate() const;

  double poisson_rate() const;
  double hawkes_nu() const;
  const Kernel& hawkes_kernel() const;
  const CoxBaseline& cox_baseline() const;
  double cox_gamma() const;
  const Kernel& cox_kernel() const;
  const RateCurve& sc_curve() const;

 private:
  ArrivalModel() = default;

  ArrivalKind kind_ = ArrivalKind::Poisson;
  double rate_ = 1.0;                 // Poisson lambda / Hawkes nu / Cox gamma
  std::optional<Kernel> kernel_;      // Hawkes h or Cox g
  std::optional<CoxBaseline> baseline_;
  std::optional<RateCurve> curve_;
};

/// One realization: strictly increasing arrival instants in (0, horizon].
struct ArrivalPath {
  double horizon = 0.0;
  std::vector<double> times;

  std::size_t count() const { return times.size(); }
  std::string to_csv() const;
};

/// Streaming exact-law generator (Ogata-style thinning). reset() rebinds it
/// to a model/horizon/stream; next() yields arrivals one at a time so ruin
/// walkers can interleave claim draws. Buffers are reused across resets; the
/// per-path candidate budget guards near-critical inputs.
class ArrivalSequencer {
 public:
  static constexpr std::uint64_t kCandidateBudget = 1'000'000'000;

  void reset(const ArrivalModel& model, double horizon, RngStream& rng);
  std::optional<double> next();
  std::uint64_t emitted() const { return emitted_; }

 private:
  const ArrivalModel* model_ = nullptr;
  RngStream* rng_ = nullptr;
  double horizon_ = 0.0;
  double t_ = 0.0;
  std::uint64_t emitted_ = 0;
  std::uint64_t candidates_ = 0;

  // Hawkes / Cox excitation state.
  double excitation_ = 0.0;       // exponential-kernel running sum
  std::vector<double> history_;   // tabulated-kernel event times
  std::size_t history_lo_ = 0;

  // Cox shot process.
  std::vector<double> shots_;
  std::size_t next_shot_ = 0;

  double tabulated_sum(const Kernel& k, double t) const;
};

/// Exact-law sample of the whole path on (0, horizon].
ArrivalPath simulate(const ArrivalModel& model, double horizon, RngStream& rng);

/// Conditional intensity at t given a sorted prefix of event times (shot
/// times for the Cox model). Contributions use the strict inequality tau < t.
double intensity_at(const ArrivalModel& model, std::span<const double> prefix,
                    double t);

struct CountEstimate {
  double mc_mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_paths = 0;
  std::optional<double> analytic;     // exact E[N_t] where known
  std::optional<double> upper_bound;  // e.g. Hawkes nu t / (1 - ||h||_1)
};

/// Monte Carlo E[N_t] with the analytic value / bound attached when known.
CountEstimate expected_count(const ArrivalModel& model, double t,
                             std::uint64_t n_paths, std::uint64_t seed,
                             int workers = 1);

/// Exact E[N_t]: Poisson, Cox (any kernel), Hawkes with exponential kernel.
std::optional<double> expected_count_analytic(const ArrivalModel& model,
                                              double t);
/// Upper bound on E[N_t]: Hawkes and self-correcting.
std::optional<double> expected_count_bound(const ArrivalModel& model, double t);

}  // namespace ruinlab
