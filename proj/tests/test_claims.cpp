#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ruinlab/claims.hpp"
#include "ruinlab/errors.hpp"
#include "ruinlab/numerics.hpp"
#include "ruinlab/rng.hpp"

using namespace ruinlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ClaimDistribution kPareto = ClaimDistribution::pareto(2.0, 1.0);
const ClaimDistribution kLogn05 = ClaimDistribution::lognormal(0.0, 0.5);
const ClaimDistribution kLogn1 = ClaimDistribution::lognormal(0.0, 1.0);
const ClaimDistribution kWeib05 = ClaimDistribution::weibull(0.5, 1.0);
const ClaimDistribution kWeib07 = ClaimDistribution::weibull(0.7, 2.0);
const ClaimDistribution kExp = ClaimDistribution::exponential(1.0);

std::vector<ClaimDistribution> all_families() {
  return {kPareto, kLogn1, kWeib05, kExp};
}

}  // namespace

TEST_CASE("family means and class tags", "[claims]") {
  REQUIRE_THAT(kPareto.mean(), WithinRel(1.5, 1e-12));
  REQUIRE_THAT(kLogn1.mean(), WithinRel(std::exp(0.5), 1e-12));
  REQUIRE_THAT(kWeib05.mean(), WithinRel(2.0, 1e-12));  // Gamma(3)
  REQUIRE_THAT(kWeib07.mean(), WithinRel(2.5316470121145666, 1e-12));
  REQUIRE_THAT(kExp.mean(), WithinRel(1.0, 1e-12));

  REQUIRE(kPareto.tail_class() == TailClass::RegularlyVarying);
  REQUIRE(kLogn1.tail_class() == TailClass::GumbelMDA);
  REQUIRE(kWeib05.tail_class() == TailClass::GumbelMDA);
  REQUIRE(kExp.tail_class() == TailClass::LightTail);
  REQUIRE(kPareto.rv_alpha() == 2.0);
  REQUIRE_THROWS_AS(kExp.rv_alpha(), std::domain_error);
}

TEST_CASE("tail closed forms", "[claims]") {
  REQUIRE(kPareto.tail(1.0) == 1.0);  // at the scale point
  REQUIRE_THAT(kPareto.tail(2.0), WithinRel(0.125, 1e-14));
  REQUIRE_THAT(kWeib05.tail(4.0), WithinRel(std::exp(-2.0), 1e-13));
  REQUIRE(kLogn1.tail(0.0) == 1.0);
  REQUIRE_THAT(kLogn1.tail(1.0), WithinRel(0.5, 1e-12));
  REQUIRE_THROWS_AS(kPareto.tail(-1.0), std::domain_error);
}

TEST_CASE("tail is a proper survival function on a log grid", "[claims]") {
  for (const auto& dist : all_families()) {
    double prev = 1.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = std::pow(10.0, -2.0 + 4.0 * i / 200.0);
      const double t = dist.tail(x);
      REQUIRE(t >= 0.0);
      REQUIRE(t <= 1.0);
      REQUIRE(t <= prev + 1e-15);
      prev = t;
    }
  }
}

TEST_CASE("integrated tail values", "[claims]") {
  for (const auto& dist : all_families()) REQUIRE(dist.integrated_tail(0.0) == 1.0);

  REQUIRE_THAT(kPareto.integrated_tail(1.0), WithinRel(1.0 / 3.0, 1e-12));
  REQUIRE_THAT(kPareto.integrated_tail(10.0), WithinRel(0.01 / 3.0, 1e-12));

  // Quadrature-backed families against independent references.
  REQUIRE_THAT(kWeib05.integrated_tail(4.0),
               WithinRel(0.40600584970983808, 1e-9));  // (sqrt(x)+1)e^-sqrt(x)
  REQUIRE_THAT(kWeib07.integrated_tail(3.0),
               WithinRel(0.42174506997721379, 1e-8));
  REQUIRE_THAT(kLogn05.integrated_tail(2.0),
               WithinRel(0.041537640495716035, 1e-8));
  REQUIRE_THAT(kLogn05.integrated_tail(10.0),
               WithinRel(2.015752421520128e-6, 1e-6));
  REQUIRE_THAT(kLogn1.integrated_tail(5.0),
               WithinRel(0.10808072452386611, 1e-8));

  // Closed form vs direct quadrature of the tail (independent route).
  const double direct =
      adaptive_simpson([&](double y) { return kPareto.tail(y); }, 10.0, 1e5) /
      kPareto.mean();
  REQUIRE_THAT(kPareto.integrated_tail(10.0), WithinRel(direct, 1e-6));
}

TEST_CASE("distribution + integrated tail partition to one", "[claims]") {
  // B_0(x) + Bbar_0(x) = 1 with B_0 computed by a separate quadrature.
  for (const auto& dist : all_families()) {
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double b0 =
          adaptive_simpson([&](double y) { return dist.tail(y); }, 0.0, x) /
          dist.mean();
      REQUIRE_THAT(b0 + dist.integrated_tail(x), WithinAbs(1.0, 1e-9));
    }
  }
}

TEST_CASE("mean excess closed forms and references", "[claims]") {
  REQUIRE_THAT(kPareto.mean_excess(10.0), WithinRel(5.0, 1e-12));  // u / alpha
  REQUIRE_THAT(kExp.mean_excess(7.0), WithinRel(1.0, 1e-12));      // memoryless
  // Below the Pareto scale point: (xm - u) + xm / alpha.
  REQUIRE_THAT(kPareto.mean_excess(0.25), WithinRel(1.25, 1e-12));

  // Weibull(1/2, 1) has e(u) = 2 (sqrt(u) + 1) exactly.
  REQUIRE_THAT(kWeib05.mean_excess(100.0), WithinRel(22.0, 1e-8));
  REQUIRE_THAT(kWeib05.mean_excess(1e4), WithinRel(202.0, 1e-8));

  REQUIRE_THAT(kWeib07.mean_excess(5.0), WithinRel(4.4548945347072602, 1e-8));
  REQUIRE_THAT(kLogn05.mean_excess(10.0), WithinRel(1.1084628920639257, 1e-8));
  REQUIRE_THAT(kLogn1.mean_excess(50.0), WithinRel(14.686350242412325, 1e-8));

  // Saturation once the tail leaves the representable range.
  REQUIRE_THROWS_AS(kWeib05.mean_excess(1e6), SaturationError);
}

TEST_CASE("mean excess matches its asymptotic equivalents", "[claims]") {
  // Pareto: e(u) alpha / u = 1 exactly.
  REQUIRE_THAT(kPareto.mean_excess(123.0) * 2.0 / 123.0, WithinAbs(1.0, 1e-9));
  // Weibull: e(u) shape / u^{1-shape} -> 1, within 2% at u = 1e4.
  REQUIRE_THAT(kWeib05.mean_excess(1e4) * 0.5 / 100.0, WithinAbs(1.0, 0.02));
  // Lognormal: e(u) (log u - mu) / (sigma^2 u) -> 1, within 5% at u = 1e6.
  const double u = 1e6;
  REQUIRE_THAT(kLogn05.mean_excess(u) * std::log(u) / (0.25 * u),
               WithinAbs(1.0, 0.05));
}

TEST_CASE("gumbel domain of attraction ratio", "[claims]") {
  // tail(u + x e(u)) / tail(u) -> e^-x for the Gumbel families.
  const auto check = [](const ClaimDistribution& dist, double u) {
    const double e = dist.mean_excess(u);
    for (double x : {-1.0, 0.0, 1.0, 2.0}) {
      const double ratio = dist.tail(u + x * e) / dist.tail(u);
      REQUIRE_THAT(ratio / std::exp(-x), WithinAbs(1.0, 0.05));
    }
  };
  check(kWeib05, 1e4);
  check(kLogn05, 1e6);
}

TEST_CASE("inverse-tail sampler maps explicit uniforms", "[claims]") {
  REQUIRE_THAT(kPareto.sample_from_uniform(0.125), WithinRel(2.0, 1e-12));
  REQUIRE_THAT(ClaimDistribution::exponential(2.0).sample_from_uniform(
                   std::exp(-1.0)),
               WithinRel(0.5, 1e-12));
  // tail(sample_from_uniform(v)) = v for every family.
  for (const auto& dist : all_families()) {
    for (double v : {1e-6, 0.01, 0.3, 0.7, 0.99}) {
      REQUIRE_THAT(dist.tail(dist.sample_from_uniform(v)), WithinRel(v, 1e-9));
    }
  }
}

TEST_CASE("sampler law of large numbers", "[claims][slowish]") {
  struct Case {
    ClaimDistribution dist;
    double variance;
  };
  const Case cases[] = {
      {kPareto, 0.75},                                    // E[C^2] = 3
      {kLogn1, (std::exp(1.0) - 1.0) * std::exp(1.0)},    // lognormal var
      {kExp, 1.0},
  };
  const int n = 1'000'000;
  int case_id = 0;
  for (const auto& c : cases) {
    RngStream rng(2024, 17 + case_id++);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += c.dist.sample(rng);
    const double se = std::sqrt(c.variance / n);
    REQUIRE_THAT(sum / n, WithinAbs(c.dist.mean(), 4.0 * se));
  }
}

TEST_CASE("sampler agrees with the analytic tail", "[claims]") {
  const int n = 100'000;
  const double bound = 5.0 / std::sqrt(static_cast<double>(n));
  int case_id = 0;
  for (const auto& dist : all_families()) {
    RngStream rng(555, case_id++);
    std::vector<double> draws(n);
    for (auto& d : draws) d = dist.sample(rng);
    std::sort(draws.begin(), draws.end());
    for (int i = 0; i <= 60; ++i) {
      const double x = std::pow(10.0, -1.5 + 3.0 * i / 60.0);
      const auto it = std::upper_bound(draws.begin(), draws.end(), x);
      const double empirical =
          static_cast<double>(draws.end() - it) / static_cast<double>(n);
      REQUIRE_THAT(empirical, WithinAbs(dist.tail(x), bound));
    }
  }
}
