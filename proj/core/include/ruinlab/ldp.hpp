#pragma once

#include <functional>
#include <string>

#include "ruinlab/arrivals.hpp"

namespace ruinlab {

/// Large-deviation rate function for the linear Hawkes count process,
/// x log(x / (nu + x ||h||_1)) - x + x ||h||_1 + nu on [0, inf), +inf below 0.
/// Also covers the homogeneous Poisson case via h_l1 = 0.
double hawkes_rate(double x, double nu, double h_l1);

/// Limit cumulant of the shot-noise Cox count process,
/// (e^theta - 1) nu + gamma (e^{(e^theta - 1) ||g||_1} - 1).
/// Throws SaturationError once e^theta overflows the inner exponent.
double cox_cumulant(double theta, double nu, double gamma, double g_l1);

/// Legendre transform of cox_cumulant, computed by solving the stationarity
/// equation on the strictly increasing derivative; the x = 0 value is the
/// analytic theta -> -inf limit nu + gamma (1 - e^{-||g||_1}).
double cox_rate(double x, double nu, double gamma, double g_l1);

/// Self-correcting rate function: Lambda^-(x) above 1, 0 at 1, Lambda^+(x)
/// on [0,1), +inf below 0, with Lambda^pm(x) = x log(x/lambda^pm) +
/// lambda^pm - x.
double sc_rate(double x, double lambda_minus, double lambda_plus);

enum class RateKind { HawkesClosedForm, CoxLegendre, SelfCorrectingPiecewise };

/// An evaluable rate function I with its unique zero mu. I(x) = +inf for
/// x < 0 (IEEE infinity, so comparisons are exact).
class RateFunction {
 public:
  static RateFunction hawkes(double nu, double h_l1);
  static RateFunction cox(double nu, double gamma, double g_l1);
  static RateFunction self_correcting(double lambda_minus, double lambda_plus);

  double operator()(double x) const;
  double mu() const { return mu_; }
  RateKind kind() const { return kind_; }
  std::string kind_name() const;

 private:
  RateFunction(RateKind kind, double p1, double p2, double p3, double mu)
      : kind_(kind), p1_(p1), p2_(p2), p3_(p3), mu_(mu) {}

  RateKind kind_;
  double p1_, p2_, p3_;
  double mu_;
};

/// The rate function matching an arrival model's count LDP.
RateFunction rate_function_for(const ArrivalModel& model);

struct CMuPrimeResult {
  double value = 0.0;
  double argmin = 0.0;
  bool positive = false;  // false when mu_prime <= mu (infimum is trivially 0)
};

/// inf_{x >= mu_prime} I(x)/x, by golden-section search after bracketing.
CMuPrimeResult c_mu_prime(const RateFunction& rate, double mu_prime);
CMuPrimeResult c_mu_prime(const std::function<double(double)>& rate, double mu,
                          double mu_prime);

/// Structural check of the LDP assumption: unique zero at mu, monotone on
/// each side, midpoint-convex on each side of mu (the self-correcting rate
/// function is discontinuous at mu, so convexity across mu is not required).
/// The net-profit and moment clauses live in the risk-process layer and are
/// referenced in the notes.
struct A1Report {
  double mu = 0.0;
  double value_at_mu = 0.0;
  bool zero_at_mu = false;
  bool positive_off_mu = false;
  bool decreasing_left = false;
  bool increasing_right = false;
  bool convex_each_side = false;
  std::string note_net_profit;
  std::string note_moment_condition;

  bool structural_pass() const {
    return zero_at_mu && positive_off_mu && decreasing_left &&
           increasing_right && convex_each_side;
  }
};

A1Report verify_assumption_a1(const RateFunction& rate);
A1Report verify_assumption_a1(const std::function<double(double)>& rate,
                              double mu);

}  // namespace ruinlab
