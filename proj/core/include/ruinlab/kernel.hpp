#pragma once

#include <vector>

namespace ruinlab {

/// Non-increasing excitation kernel on [0, inf). Either h(t) = a e^{-bt}
/// or a piecewise-linear table (zero beyond its last knot). The restriction
/// to non-increasing shapes keeps the between-event intensity bound exact
/// for thinning.
class Kernel {
 public:
  static Kernel exponential(double a, double b);
  /// Knots must start at 0, strictly increase; values positive and
  /// non-increasing (validated here).
  static Kernel tabulated(std::vector<double> ts, std::vector<double> vals);

  double operator()(double t) const;
  double l1_norm() const { return l1_; }

  /// integral_0^t of the kernel.
  double integral_to(double t) const;

  bool is_exponential() const { return exponential_; }
  double exp_a() const { return a_; }
  double exp_b() const { return b_; }
  const std::vector<double>& knots() const { return ts_; }
  const std::vector<double>& values() const { return vs_; }
  /// End of support; +inf for the exponential form.
  double support_end() const;

 private:
  Kernel() = default;

  bool exponential_ = true;
  double a_ = 0.0, b_ = 0.0;
  std::vector<double> ts_, vs_;
  double l1_ = 0.0;
};

}  // namespace ruinlab
