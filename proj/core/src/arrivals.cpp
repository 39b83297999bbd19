#include "ruinlab/arrivals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ruinlab/errors.hpp"
#include "ruinlab/numerics.hpp"
#include "ruinlab/parallel.hpp"

namespace ruinlab {

// ---------------------------------------------------------------------------
// CoxBaseline

double CoxBaseline::operator()(double t) const {
  if (relax == 0.0) return nu_inf;
  return nu_inf + (nu0 - nu_inf) * std::exp(-relax * t);
}

double CoxBaseline::sup() const { return std::max(nu0, nu_inf); }

double CoxBaseline::integral_to(double t) const {
  if (relax == 0.0) return nu_inf * t;
  return nu_inf * t + (nu0 - nu_inf) * (1.0 - std::exp(-relax * t)) / relax;
}

// ---------------------------------------------------------------------------
// RateCurve

RateCurve RateCurve::clamped_exp(double lambda_minus, double lambda_plus) {
  if (!(lambda_minus > 0.0 && lambda_minus < 1.0 && lambda_plus > 1.0))
    throw std::invalid_argument(
        "RateCurve: need 0 < lambda_minus < 1 < lambda_plus");
  RateCurve c;
  c.form_ = Form::ClampedExp;
  c.lm_ = lambda_minus;
  c.lp_ = lambda_plus;
  return c;
}

RateCurve RateCurve::logistic(double lambda_minus, double lambda_plus,
                              double slope, double center) {
  if (!(lambda_minus > 0.0 && lambda_minus < 1.0 && lambda_plus > 1.0))
    throw std::invalid_argument(
        "RateCurve: need 0 < lambda_minus < 1 < lambda_plus");
  if (!(slope > 0.0)) throw std::invalid_argument("RateCurve: slope must be > 0");
  RateCurve c;
  c.form_ = Form::Logistic;
  c.lm_ = lambda_minus;
  c.lp_ = lambda_plus;
  c.slope_ = slope;
  c.center_ = center;
  return c;
}

RateCurve RateCurve::tabulated(std::vector<double> zs, std::vector<double> vals) {
  if (zs.size() < 2 || zs.size() != vals.size())
    throw std::invalid_argument(
        "RateCurve: need matching knot/value lists, >= 2 points");
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (i > 0 && !(zs[i] > zs[i - 1]))
      throw std::invalid_argument("RateCurve: knots must be strictly increasing");
    if (!(vals[i] > 0.0))
      throw std::invalid_argument("RateCurve: values must be positive");
    if (i > 0 && vals[i] < vals[i - 1])
      throw std::invalid_argument("RateCurve: values must be non-decreasing");
  }
  if (!(vals.front() < 1.0 && vals.back() > 1.0))
    throw std::invalid_argument(
        "RateCurve: need lambda_minus < 1 < lambda_plus at the table ends");
  RateCurve c;
  c.form_ = Form::Tabulated;
  c.zs_ = std::move(zs);
  c.vs_ = std::move(vals);
  c.lm_ = c.vs_.front();
  c.lp_ = c.vs_.back();
  return c;
}

double RateCurve::operator()(double z) const {
  switch (form_) {
    case Form::ClampedExp:
      if (z >= std::log(lp_)) return lp_;
      if (z <= std::log(lm_)) return lm_;
      return std::exp(z);
    case Form::Logistic:
      return lm_ + (lp_ - lm_) / (1.0 + std::exp(-slope_ * (z - center_)));
    case Form::Tabulated: {
      if (z <= zs_.front()) return vs_.front();
      if (z >= zs_.back()) return vs_.back();
      std::size_t lo = 0, hi = zs_.size() - 1;
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (zs_[mid] <= z ? lo : hi) = mid;
      }
      const double w = (z - zs_[lo]) / (zs_[hi] - zs_[lo]);
      return vs_[lo] + w * (vs_[hi] - vs_[lo]);
    }
  }
  return lm_;
}

// ---------------------------------------------------------------------------
// ArrivalModel

ArrivalModel ArrivalModel::poisson(double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("Poisson: lambda must be > 0");
  ArrivalModel m;
  m.kind_ = ArrivalKind::Poisson;
  m.rate_ = lambda;
  return m;
}

ArrivalModel ArrivalModel::hawkes(double nu, Kernel h) {
  if (!(nu > 0.0)) throw std::invalid_argument("Hawkes: nu must be > 0");
  if (!(h.l1_norm() < 1.0))
    throw std::invalid_argument("Hawkes kernel L1 norm " +
                                std::to_string(h.l1_norm()) +
                                " >= 1 (subcriticality violated)");
  ArrivalModel m;
  m.kind_ = ArrivalKind::Hawkes;
  m.rate_ = nu;
  m.kernel_ = std::move(h);
  return m;
}

ArrivalModel ArrivalModel::cox_shot_noise(CoxBaseline baseline, double gamma,
                                          Kernel g) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("CoxShotNoise: gamma must be > 0");
  if (!(baseline.nu_inf > 0.0 && baseline.nu0 > 0.0))
    throw std::invalid_argument("CoxShotNoise: baseline must stay positive");
  if (baseline.relax < 0.0)
    throw std::invalid_argument("CoxShotNoise: relax rate must be >= 0");
  if (baseline.relax == 0.0 && baseline.nu0 != baseline.nu_inf)
    throw std::invalid_argument(
        "CoxShotNoise: constant baseline requires nu0 == nu_inf");
  ArrivalModel m;
  m.kind_ = ArrivalKind::CoxShotNoise;
  m.rate_ = gamma;
  m.baseline_ = baseline;
  m.kernel_ = std::move(g);
  return m;
}

ArrivalModel ArrivalModel::self_correcting(RateCurve lambda_fn) {
  ArrivalModel m;
  m.kind_ = ArrivalKind::SelfCorrecting;
  m.curve_ = std::move(lambda_fn);
  return m;
}

std::string ArrivalModel::kind_name() const {
  switch (kind_) {
    case ArrivalKind::Poisson:
      return "poisson";
    case ArrivalKind::Hawkes:
      return "hawkes";
    case ArrivalKind::CoxShotNoise:
      return "cox_shot_noise";
    case ArrivalKind::SelfCorrecting:
      return "self_correcting";
  }
  return "?";
}

double ArrivalModel::mean_rate() const {
  switch (kind_) {
    case ArrivalKind::Poisson:
      return rate_;
    case ArrivalKind::Hawkes:
      return rate_ / (1.0 - kernel_->l1_norm());
    case ArrivalKind::CoxShotNoise:
      return baseline_->nu_inf + rate_ * kernel_->l1_norm();
    case ArrivalKind::SelfCorrecting:
      return 1.0;
  }
  return 0.0;
}

namespace {
[[noreturn]] void wrong_kind(const char* what) {
  throw std::logic_error(std::string("ArrivalModel: accessor ") + what +
                         " does not match the model kind");
}
}  // namespace

double ArrivalModel::poisson_rate() const {
  if (kind_ != ArrivalKind::Poisson) wrong_kind("poisson_rate");
  return rate_;
}
double ArrivalModel::hawkes_nu() const {
  if (kind_ != ArrivalKind::Hawkes) wrong_kind("hawkes_nu");
  return rate_;
}
const Kernel& ArrivalModel::hawkes_kernel() const {
  if (kind_ != ArrivalKind::Hawkes) wrong_kind("hawkes_kernel");
  return *kernel_;
}
const CoxBaseline& ArrivalModel::cox_baseline() const {
  if (kind_ != ArrivalKind::CoxShotNoise) wrong_kind("cox_baseline");
  return *baseline_;
}
double ArrivalModel::cox_gamma() const {
  if (kind_ != ArrivalKind::CoxShotNoise) wrong_kind("cox_gamma");
  return rate_;
}
const Kernel& ArrivalModel::cox_kernel() const {
  if (kind_ != ArrivalKind::CoxShotNoise) wrong_kind("cox_kernel");
  return *kernel_;
}
const RateCurve& ArrivalModel::sc_curve() const {
  if (kind_ != ArrivalKind::SelfCorrecting) wrong_kind("sc_curve");
  return *curve_;
}

// ---------------------------------------------------------------------------
// ArrivalSequencer

void ArrivalSequencer::reset(const ArrivalModel& model, double horizon,
                             RngStream& rng) {
  if (!(horizon > 0.0))
    throw std::domain_error("simulate: horizon must be > 0");
  model_ = &model;
  rng_ = &rng;
  horizon_ = horizon;
  t_ = 0.0;
  emitted_ = 0;
  candidates_ = 0;
  excitation_ = 0.0;
  history_.clear();
  history_lo_ = 0;
  shots_.clear();
  next_shot_ = 0;
  if (model.kind() == ArrivalKind::CoxShotNoise) {
    // Outer Poisson(gamma) shot times come from a dedicated lane so the
    // arrival/claim draws keep their prefix property across horizons.
    RngStream shot_rng = rng.lane(1);
    const double gamma = model.cox_gamma();
    double s = shot_rng.exponential() / gamma;
    while (s <= horizon) {
      shots_.push_back(s);
      s += shot_rng.exponential() / gamma;
    }
  }
}

double ArrivalSequencer::tabulated_sum(const Kernel& k, double t) const {
  double sum = 0.0;
  for (std::size_t i = history_lo_; i < history_.size(); ++i)
    sum += k(t - history_[i]);
  return sum;
}

std::optional<double> ArrivalSequencer::next() {
  if (t_ >= horizon_) return std::nullopt;
  const ArrivalModel& m = *model_;
  switch (m.kind()) {
    case ArrivalKind::Poisson: {
      t_ += rng_->exponential() / m.poisson_rate();
      if (t_ > horizon_) return std::nullopt;
      ++emitted_;
      return t_;
    }
    case ArrivalKind::Hawkes: {
      const Kernel& h = m.hawkes_kernel();
      const double nu = m.hawkes_nu();
      const bool expk = h.is_exponential();
      const double support = h.support_end();
      for (;;) {
        if (++candidates_ > kCandidateBudget)
          throw BudgetError("Hawkes thinning exceeded the candidate budget");
        if (!expk) {
          while (history_lo_ < history_.size() &&
                 t_ - history_[history_lo_] >= support)
            ++history_lo_;
        }
        const double bound =
            nu + (expk ? excitation_ : tabulated_sum(h, t_));
        const double cand = t_ + rng_->exponential() / bound;
        if (cand > horizon_) {
          t_ = cand;
          return std::nullopt;
        }
        double lambda;
        if (expk) {
          excitation_ *= std::exp(-h.exp_b() * (cand - t_));
          lambda = nu + excitation_;
        } else {
          lambda = nu + tabulated_sum(h, cand);
        }
        t_ = cand;
        if (rng_->uniform01() * bound <= lambda) {
          if (expk)
            excitation_ += h.exp_a();
          else
            history_.push_back(t_);
          ++emitted_;
          return t_;
        }
      }
    }
    case ArrivalKind::CoxShotNoise: {
      const Kernel& g = m.cox_kernel();
      const CoxBaseline& base = m.cox_baseline();
      const double nu_star = base.sup();
      const bool expk = g.is_exponential();
      const double support = g.support_end();
      for (;;) {
        if (++candidates_ > kCandidateBudget)
          throw BudgetError("Cox thinning exceeded the candidate budget");
        if (!expk) {
          while (history_lo_ < next_shot_ &&
                 t_ - shots_[history_lo_] >= support)
            ++history_lo_;
        }
        double shot_sum;
        if (expk) {
          shot_sum = excitation_;
        } else {
          shot_sum = 0.0;
          for (std::size_t i = history_lo_; i < next_shot_; ++i)
            shot_sum += g(t_ - shots_[i]);
        }
        const double seg_end =
            next_shot_ < shots_.size() ? shots_[next_shot_] : horizon_;
        const double bound = nu_star + shot_sum;
        const double cand = t_ + rng_->exponential() / bound;
        if (cand >= seg_end) {
          // Cross into the next segment; the overshot proposal is discarded
          // (memorylessness keeps the law exact).
          if (expk)
            excitation_ *= std::exp(-g.exp_b() * (seg_end - t_));
          t_ = seg_end;
          if (next_shot_ < shots_.size()) {
            if (expk) excitation_ += g.exp_a();
            ++next_shot_;
            continue;
          }
          return std::nullopt;
        }
        double lambda;
        if (expk) {
          excitation_ *= std::exp(-g.exp_b() * (cand - t_));
          lambda = base(cand) + excitation_;
        } else {
          double s = 0.0;
          for (std::size_t i = history_lo_; i < next_shot_; ++i)
            s += g(cand - shots_[i]);
          lambda = base(cand) + s;
        }
        t_ = cand;
        if (rng_->uniform01() * bound <= lambda) {
          ++emitted_;
          return t_;
        }
      }
    }
    case ArrivalKind::SelfCorrecting: {
      const RateCurve& curve = m.sc_curve();
      const double lp = curve.lambda_plus();
      for (;;) {
        if (++candidates_ > kCandidateBudget)
          throw BudgetError(
              "self-correcting thinning exceeded the candidate budget");
        const double cand = t_ + rng_->exponential() / lp;
        if (cand > horizon_) {
          t_ = cand;
          return std::nullopt;
        }
        // Z uses the left limit N_{t-}: no arrival lies in (t_, cand).
        const double z = cand - static_cast<double>(emitted_);
        const double lambda = curve(z);
        t_ = cand;
        if (rng_->uniform01() * lp <= lambda) {
          ++emitted_;
          return t_;
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Free functions

ArrivalPath simulate(const ArrivalModel& model, double horizon,
                     RngStream& rng) {
  ArrivalSequencer seq;
  seq.reset(model, horizon, rng);
  ArrivalPath path;
  path.horizon = horizon;
  while (auto t = seq.next()) path.times.push_back(*t);
  return path;
}

std::string ArrivalPath::to_csv() const {
  std::string out = "time\n";
  char buf[40];
  for (double t : times) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", t);
    out += buf;
  }
  return out;
}

double intensity_at(const ArrivalModel& model, std::span<const double> prefix,
                    double t) {
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (!(prefix[i] > prefix[i - 1]))
      throw std::domain_error("intensity_at: prefix must be strictly increasing");
  switch (model.kind()) {
    case ArrivalKind::Poisson:
      return model.poisson_rate();
    case ArrivalKind::Hawkes: {
      double sum = model.hawkes_nu();
      const Kernel& h = model.hawkes_kernel();
      for (double tau : prefix)
        if (tau < t) sum += h(t - tau);
      return sum;
    }
    case ArrivalKind::CoxShotNoise: {
      double sum = model.cox_baseline()(t);
      const Kernel& g = model.cox_kernel();
      for (double tau : prefix)
        if (tau < t) sum += g(t - tau);
      return sum;
    }
    case ArrivalKind::SelfCorrecting: {
      std::size_t n = 0;
      for (double tau : prefix)
        if (tau < t) ++n;
      return model.sc_curve()(t - static_cast<double>(n));
    }
  }
  return 0.0;
}

std::optional<double> expected_count_analytic(const ArrivalModel& model,
                                              double t) {
  switch (model.kind()) {
    case ArrivalKind::Poisson:
      return model.poisson_rate() * t;
    case ArrivalKind::CoxShotNoise: {
      const Kernel& g = model.cox_kernel();
      double shot_part;
      if (g.is_exponential()) {
        const double a = g.exp_a(), b = g.exp_b();
        shot_part = a / b * (t - (1.0 - std::exp(-b * t)) / b);
      } else {
        QuadratureOptions opts;
        opts.abs_tol = 1e-9;
        shot_part = adaptive_simpson(
            [&](double s) { return g.integral_to(s); }, 0.0, t, opts);
      }
      return model.cox_baseline().integral_to(t) +
             model.cox_gamma() * shot_part;
    }
    case ArrivalKind::Hawkes: {
      const Kernel& h = model.hawkes_kernel();
      if (!h.is_exponential()) return std::nullopt;
      const double a = h.exp_a(), b = h.exp_b();
      const double nu = model.hawkes_nu();
      const double mean_intensity = nu * b / (b - a);
      return mean_intensity * t -
             (mean_intensity - nu) * (1.0 - std::exp(-(b - a) * t)) / (b - a);
    }
    case ArrivalKind::SelfCorrecting:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> expected_count_bound(const ArrivalModel& model,
                                           double t) {
  switch (model.kind()) {
    case ArrivalKind::Hawkes:
      return model.hawkes_nu() / (1.0 - model.hawkes_kernel().l1_norm()) * t;
    case ArrivalKind::SelfCorrecting:
      return model.sc_curve().lambda_plus() * t;
    default:
      return std::nullopt;
  }
}

CountEstimate expected_count(const ArrivalModel& model, double t,
                             std::uint64_t n_paths, std::uint64_t seed,
                             int workers) {
  if (!(t > 0.0)) throw std::domain_error("expected_count: t must be > 0");
  if (n_paths < 1)
    throw std::domain_error("expected_count: need at least one path");
  // Integer accumulation keeps the reduction exact, so the estimate does not
  // depend on how paths are grouped across workers.
  std::vector<unsigned __int128> sums(std::max(workers, 1), 0);
  std::vector<unsigned __int128> sq_sums(std::max(workers, 1), 0);
  parallel_for_paths(n_paths, workers,
                     [&](std::uint64_t first, std::uint64_t last, int w) {
                       ArrivalSequencer seq;
                       unsigned __int128 sum = 0, sq = 0;
                       for (std::uint64_t i = first; i < last; ++i) {
                         RngStream rng(seed, i);
                         seq.reset(model, t, rng);
                         while (seq.next()) {
                         }
                         const std::uint64_t c = seq.emitted();
                         sum += c;
                         sq += static_cast<unsigned __int128>(c) * c;
                       }
                       sums[w] = sum;
                       sq_sums[w] = sq;
                     });
  unsigned __int128 sum = 0, sq = 0;
  for (std::size_t w = 0; w < sums.size(); ++w) {
    sum += sums[w];
    sq += sq_sums[w];
  }
  CountEstimate est;
  est.n_paths = n_paths;
  const double n = static_cast<double>(n_paths);
  est.mc_mean = static_cast<double>(sum) / n;
  const double var =
      std::max(0.0, static_cast<double>(sq) / n - est.mc_mean * est.mc_mean);
  est.std_error = n_paths > 1 ? std::sqrt(var / n) : 0.0;
  est.analytic = expected_count_analytic(model, t);
  est.upper_bound = expected_count_bound(model, t);
  return est;
}

}  // namespace ruinlab
