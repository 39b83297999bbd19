#include "ruinlab/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ruinlab {

Kernel Kernel::exponential(double a, double b) {
  if (!(a > 0.0)) throw std::invalid_argument("Kernel: a must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("Kernel: b must be > 0");
  Kernel k;
  k.exponential_ = true;
  k.a_ = a;
  k.b_ = b;
  k.l1_ = a / b;
  return k;
}

Kernel Kernel::tabulated(std::vector<double> ts, std::vector<double> vals) {
  if (ts.size() < 2 || ts.size() != vals.size())
    throw std::invalid_argument("Kernel: need matching knot/value lists, >= 2 points");
  if (ts.front() != 0.0)
    throw std::invalid_argument("Kernel: tabulated knots must start at 0");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0 && !(ts[i] > ts[i - 1]))
      throw std::invalid_argument("Kernel: knots must be strictly increasing");
    if (!(vals[i] > 0.0))
      throw std::invalid_argument("Kernel: tabulated values must be positive");
    if (i > 0 && vals[i] > vals[i - 1])
      throw std::invalid_argument("Kernel: tabulated values must be non-increasing");
  }
  Kernel k;
  k.exponential_ = false;
  k.ts_ = std::move(ts);
  k.vs_ = std::move(vals);
  double l1 = 0.0;
  for (std::size_t i = 1; i < k.ts_.size(); ++i)
    l1 += 0.5 * (k.vs_[i] + k.vs_[i - 1]) * (k.ts_[i] - k.ts_[i - 1]);
  k.l1_ = l1;
  return k;
}

double Kernel::operator()(double t) const {
  if (t < 0.0) return 0.0;
  if (exponential_) return a_ * std::exp(-b_ * t);
  if (t >= ts_.back()) return 0.0;
  // binary search for the segment
  std::size_t lo = 0, hi = ts_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (ts_[mid] <= t ? lo : hi) = mid;
  }
  const double w = (t - ts_[lo]) / (ts_[hi] - ts_[lo]);
  return vs_[lo] + w * (vs_[hi] - vs_[lo]);
}

double Kernel::integral_to(double t) const {
  if (t <= 0.0) return 0.0;
  if (exponential_) return a_ / b_ * (1.0 - std::exp(-b_ * t));
  double acc = 0.0;
  for (std::size_t i = 1; i < ts_.size(); ++i) {
    if (t <= ts_[i - 1]) break;
    const double right = std::min(t, ts_[i]);
    const double w = (right - ts_[i - 1]) / (ts_[i] - ts_[i - 1]);
    const double v_right = vs_[i - 1] + w * (vs_[i] - vs_[i - 1]);
    acc += 0.5 * (vs_[i - 1] + v_right) * (right - ts_[i - 1]);
  }
  return acc;
}

double Kernel::support_end() const {
  return exponential_ ? std::numeric_limits<double>::infinity() : ts_.back();
}

}  // namespace ruinlab
