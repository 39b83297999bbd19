#pragma once

#include <string>

#include "ruinlab/rng.hpp"

namespace ruinlab {

enum class ClaimFamily { Pareto, Lognormal, Weibull, Exponential };

/// Heaviness class of the claim tail. LightTail members are validation
/// oracles only and are rejected by the asymptotic formulas.
enum class TailClass { RegularlyVarying, GumbelMDA, LightTail };

/// A claim-size law with exact tail, integrated tail, mean-excess function
/// and inverse-transform sampler.
///
/// Families and parameters:
///   Pareto(alpha, xm)    : survival (xm/x)^(alpha+1) for x >= xm, else 1
///   Lognormal(mu, sigma) : log C ~ N(mu, sigma^2)
///   Weibull(shape, scale): survival exp(-(x/scale)^shape), shape in (0,1)
///   Exponential(rate)    : survival exp(-rate x)
///
/// Instances are immutable and safe to share across threads; samplers take
/// the random stream as an explicit argument.
class ClaimDistribution {
 public:
  static ClaimDistribution pareto(double alpha, double xm);
  static ClaimDistribution lognormal(double mu_log, double sigma);
  static ClaimDistribution weibull(double shape, double scale);
  static ClaimDistribution exponential(double rate);

  ClaimFamily family() const { return family_; }
  TailClass tail_class() const;
  std::string family_name() const;

  double mean() const { return mean_; }

  /// Survival function B-bar(x). Requires x >= 0.
  double tail(double x) const;

  /// log of tail(x), stable far past double underflow of the tail itself.
  double log_tail(double x) const;

  /// Integrated-tail survival: (1/E[C]) * integral_x^inf tail(y) dy.
  /// Closed form for Pareto and Exponential, quadrature otherwise.
  double integrated_tail(double x) const;

  /// Mean excess e(u) = E[C - u | C > u]. Throws SaturationError once the
  /// tail at u has left the representable range (use the asymptotic form).
  double mean_excess(double u) const;

  /// One draw by inverse transform.
  double sample(RngStream& rng) const { return sample_from_uniform(rng.uniform01()); }

  /// Inverse-tail map: returns x with tail(x) = v, v in (0,1). Exposed so
  /// the sampler can be checked against explicit uniforms.
  double sample_from_uniform(double v) const;

  /// Regular-variation tail index alpha (tail ~ x^-(alpha+1)); Pareto only.
  double rv_alpha() const;

  // Raw parameters (meaning depends on family; see the table above).
  double param1() const { return a_; }
  double param2() const { return b_; }

 private:
  ClaimDistribution(ClaimFamily family, double a, double b);

  ClaimFamily family_;
  double a_, b_;
  double mean_;
};

}  // namespace ruinlab
