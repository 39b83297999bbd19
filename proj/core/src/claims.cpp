#include "ruinlab/claims.hpp"

#include <cmath>
#include <stdexcept>

#include "ruinlab/errors.hpp"
#include "ruinlab/numerics.hpp"

namespace ruinlab {

namespace {

// Below this the tail is treated as saturated rather than silently zero,
// because mean_excess divides by it.
constexpr double kLogTailFloor = -690.0;  // ~ log(1e-300)

// integral_0^inf tail(u+s)/tail(u) ds, evaluated in log space so the ratio
// survives even where tail(u+s) underflows.
double ratio_excess_integral(const ClaimDistribution& d, double u) {
  const double lt_u = d.log_tail(u);
  const auto ratio = [&](double s) {
    const double diff = d.log_tail(u + s) - lt_u;
    return diff < -745.0 ? 0.0 : std::exp(diff);
  };
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-12;
  return integrate_decreasing_tail(ratio, 0.0, opts);
}

}  // namespace

ClaimDistribution::ClaimDistribution(ClaimFamily family, double a, double b)
    : family_(family), a_(a), b_(b) {
  switch (family_) {
    case ClaimFamily::Pareto:
      // tail exponent alpha+1 > 1 for every alpha > 0, so the mean exists
      mean_ = (a_ + 1.0) * b_ / a_;
      break;
    case ClaimFamily::Lognormal:
      mean_ = std::exp(a_ + 0.5 * b_ * b_);
      break;
    case ClaimFamily::Weibull:
      mean_ = b_ * std::tgamma(1.0 + 1.0 / a_);
      break;
    case ClaimFamily::Exponential:
      mean_ = 1.0 / a_;
      break;
  }
}

ClaimDistribution ClaimDistribution::pareto(double alpha, double xm) {
  if (!(alpha > 0.0)) throw std::invalid_argument("Pareto: alpha must be > 0");
  if (!(xm > 0.0)) throw std::invalid_argument("Pareto: scale xm must be > 0");
  return ClaimDistribution(ClaimFamily::Pareto, alpha, xm);
}

ClaimDistribution ClaimDistribution::lognormal(double mu_log, double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("Lognormal: sigma must be > 0");
  return ClaimDistribution(ClaimFamily::Lognormal, mu_log, sigma);
}

ClaimDistribution ClaimDistribution::weibull(double shape, double scale) {
  if (!(shape > 0.0 && shape < 1.0))
    throw std::invalid_argument("Weibull: shape must lie in (0,1)");
  if (!(scale > 0.0)) throw std::invalid_argument("Weibull: scale must be > 0");
  return ClaimDistribution(ClaimFamily::Weibull, shape, scale);
}

ClaimDistribution ClaimDistribution::exponential(double rate) {
  if (!(rate > 0.0))
    throw std::invalid_argument("Exponential: rate must be > 0");
  return ClaimDistribution(ClaimFamily::Exponential, rate, 0.0);
}

TailClass ClaimDistribution::tail_class() const {
  switch (family_) {
    case ClaimFamily::Pareto:
      return TailClass::RegularlyVarying;
    case ClaimFamily::Lognormal:
    case ClaimFamily::Weibull:
      return TailClass::GumbelMDA;
    case ClaimFamily::Exponential:
      return TailClass::LightTail;
  }
  return TailClass::LightTail;
}

std::string ClaimDistribution::family_name() const {
  switch (family_) {
    case ClaimFamily::Pareto:
      return "pareto";
    case ClaimFamily::Lognormal:
      return "lognormal";
    case ClaimFamily::Weibull:
      return "weibull";
    case ClaimFamily::Exponential:
      return "exponential";
  }
  return "?";
}

double ClaimDistribution::tail(double x) const {
  if (x < 0.0) throw std::domain_error("tail: x must be >= 0");
  if (x == 0.0) return 1.0;
  switch (family_) {
    case ClaimFamily::Pareto:
      return x <= b_ ? 1.0 : std::pow(b_ / x, a_ + 1.0);
    case ClaimFamily::Lognormal:
      return norm_upper_tail((std::log(x) - a_) / b_);
    case ClaimFamily::Weibull:
      return std::exp(-std::pow(x / b_, a_));
    case ClaimFamily::Exponential:
      return std::exp(-a_ * x);
  }
  return 0.0;
}

double ClaimDistribution::log_tail(double x) const {
  if (x < 0.0) throw std::domain_error("log_tail: x must be >= 0");
  if (x == 0.0) return 0.0;
  switch (family_) {
    case ClaimFamily::Pareto:
      return x <= b_ ? 0.0 : (a_ + 1.0) * (std::log(b_) - std::log(x));
    case ClaimFamily::Lognormal:
      return log_norm_upper_tail((std::log(x) - a_) / b_);
    case ClaimFamily::Weibull:
      return -std::pow(x / b_, a_);
    case ClaimFamily::Exponential:
      return -a_ * x;
  }
  return -std::numeric_limits<double>::infinity();
}

double ClaimDistribution::integrated_tail(double x) const {
  if (x < 0.0) throw std::domain_error("integrated_tail: x must be >= 0");
  if (x == 0.0) return 1.0;
  switch (family_) {
    case ClaimFamily::Pareto: {
      // integral_x^inf tail = xm/alpha * (xm/x)^alpha for x >= xm,
      // (xm - x) + xm/alpha below the scale point.
      const double full = (x <= b_)
                              ? (b_ - x) + b_ / a_
                              : b_ / a_ * std::pow(b_ / x, a_);
      return full / mean_;
    }
    case ClaimFamily::Exponential:
      return std::exp(-a_ * x);
    case ClaimFamily::Lognormal:
    case ClaimFamily::Weibull: {
      const double lt = log_tail(x);
      if (lt < kLogTailFloor) return 0.0;  // below the 1e-10 reporting floor
      const double excess = ratio_excess_integral(*this, x);
      return std::exp(lt + std::log(excess) - std::log(mean_));
    }
  }
  return 0.0;
}

double ClaimDistribution::mean_excess(double u) const {
  if (u < 0.0) throw std::domain_error("mean_excess: u must be >= 0");
  if (log_tail(u) < kLogTailFloor)
    throw SaturationError(
        "mean_excess: tail(u) underflowed below 1e-300; use the asymptotic "
        "mean-excess form instead");
  switch (family_) {
    case ClaimFamily::Pareto:
      return u <= b_ ? (b_ - u) + b_ / a_ : u / a_;
    case ClaimFamily::Exponential:
      return 1.0 / a_;  // memoryless
    case ClaimFamily::Lognormal:
    case ClaimFamily::Weibull:
      return ratio_excess_integral(*this, u);
  }
  return 0.0;
}

double ClaimDistribution::sample_from_uniform(double v) const {
  switch (family_) {
    case ClaimFamily::Pareto:
      return b_ * std::pow(v, -1.0 / (a_ + 1.0));
    case ClaimFamily::Lognormal:
      // -inv_norm_cdf(v) = inv_norm_cdf(1-v) without forming 1-v, which
      // matters for deep-tail draws.
      return std::exp(a_ - b_ * inv_norm_cdf(v));
    case ClaimFamily::Weibull:
      return b_ * std::pow(-std::log(v), 1.0 / a_);
    case ClaimFamily::Exponential:
      return -std::log(v) / a_;
  }
  return 0.0;
}

double ClaimDistribution::rv_alpha() const {
  if (family_ != ClaimFamily::Pareto)
    throw std::domain_error("rv_alpha: claims are not regularly varying");
  return a_;
}

}  // namespace ruinlab
