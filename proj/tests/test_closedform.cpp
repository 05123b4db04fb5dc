#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "crmud/closedform.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace crmud;

namespace {
const SystemParams kP = SystemParams::defaults(1);
}

TEST_CASE("prob_unsaturated values and domain") {
  const auto r = prob_unsaturated(kP, 10);
  CHECK(r.exact == doctest::Approx(std::exp(-10.0 * kP.k / kP.ps_max)).epsilon(1e-14));
  CHECK(r.exact == doctest::Approx(0.296444).epsilon(1e-5));
  CHECK(r.series == doctest::Approx(0.315362).epsilon(1e-5));
  CHECK(prob_unsaturated_exact(kP, 1) ==
        doctest::Approx(std::exp(-kP.k / kP.ps_max)).epsilon(1e-14));
  CHECK_THROWS_AS(prob_unsaturated(kP, 1), std::domain_error);
  CHECK_THROWS_AS(prob_unsaturated_exact(kP, 0), std::domain_error);

  double prev_series = 1.0, prev_exact = 1.0;
  for (int n = 2; n <= 64; n *= 2) {
    const auto q = prob_unsaturated(kP, n);
    CHECK(q.series < prev_series);
    CHECK(q.exact < prev_exact);
    prev_series = q.series;
    prev_exact = q.exact;
  }
}

TEST_CASE("prob_unsaturated forms agree in the exponent for large N") {
  // -N ln(1 - 1/N) -> 1, so the exponents K/(Ps ln(1-1/N)) and -N K/Ps agree
  // to first order in 1/N.
  for (int n : {10, 100, 1000}) {
    const auto r = prob_unsaturated(kP, n);
    const double ratio = std::log(r.series) / std::log(r.exact);
    CHECK(std::fabs(ratio - 1.0) <= 1.0 / static_cast<double>(n));
  }
}

TEST_CASE("b_n_low1 value, defining equation and growth") {
  CHECK(b_n_low1(kP, 100) == doctest::Approx(18.2961836637).epsilon(1e-9));
  double prev = 0.0;
  for (int n : {1, 2, 5, 10, 100, 1000, 100000}) {
    const double b = b_n_low1(kP, n);
    // W inverts w e^w, so b solves (b + K) exp(b / Ps) = K N
    CHECK((b + kP.k) * std::exp(b / kP.ps_max) ==
          doctest::Approx(kP.k * static_cast<double>(n)).epsilon(1e-9));
    CHECK(b > prev - 1e-12);
    prev = b;
    // independent root-finder for the same W argument
    const double arg = kP.k * n / kP.ps_max * std::exp(kP.k / kP.ps_max);
    CHECK(b == doctest::Approx(kP.ps_max * oracles::lambert_bisect(arg) - kP.k).epsilon(1e-9));
  }
}

TEST_CASE("m_avg_lower value, range and quadrature oracle") {
  const double v = m_avg_lower(kP);
  CHECK(v == doctest::Approx(0.954768316922).epsilon(1e-9));
  CHECK(v >= kP.mu_min);
  CHECK(v <= std::exp(-kP.rp));

  // direct conditional expectation of mu(alpha, ps_max) for alpha ~ Exp(1)
  // restricted to the saturated region alpha < K/ps_max
  const double c = kP.k / kP.ps_max;
  const double num = oracles::adaptive_simpson(
      [&](double a) { return departure_rate(kP, a, kP.ps_max) * std::exp(-a); }, 0.0, c,
      1e-13);
  CHECK(v == doctest::Approx(num / -std::expm1(-c)).epsilon(1e-9));
}

TEST_CASE("m_avg_upper limit, range and quadrature oracle") {
  const double mu_free = std::exp(-kP.rp);
  CHECK(std::fabs(m_avg_upper(kP, 1000000) - mu_free) <= 1e-4);
  double prev = 0.0;
  for (int n : {1, 2, 5, 20, 100, 10000}) {
    const double v = m_avg_upper(kP, n);
    CHECK(v >= kP.mu_min - 1e-12);
    CHECK(v <= mu_free);
    CHECK(v >= prev);
    prev = v;
  }
  // conditional expectation of mu(min alpha, ps_max): the minimum of N unit
  // exponentials is Exp(N), restricted to the saturated region
  for (int n : {1, 5, 40}) {
    const double c = kP.k / kP.ps_max;
    const double num = oracles::adaptive_simpson(
        [&](double a) {
          return departure_rate(kP, a, kP.ps_max) * n * std::exp(-static_cast<double>(n) * a);
        },
        0.0, c, 1e-13);
    CHECK(m_avg_upper(kP, n) ==
          doctest::Approx(num / -std::expm1(-static_cast<double>(n) * c)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(m_avg_upper(kP, 0), std::domain_error);
}

TEST_CASE("bound applicability thresholds") {
  CHECK(!lower_bound_capacity(kP, 1).has_value());
  CHECK(!lower_bound_capacity(kP, 5).has_value());
  CHECK(!lower_bound_capacity(kP, 8).has_value());
  CHECK(lower_bound_capacity(kP, 9).has_value());
  CHECK(!upper_bound_capacity(kP, 1).has_value());
  CHECK(upper_bound_capacity(kP, 2).has_value());
}

TEST_CASE("lower bound stays below upper bound and both grow with N") {
  double prev_lo = 0.0, prev_hi = 0.0;
  for (int n = 9; n <= 4000; n = n < 100 ? n + 7 : n * 2) {
    const auto lo = lower_bound_capacity(kP, n);
    const auto hi = upper_bound_capacity(kP, n);
    REQUIRE(lo.has_value());
    REQUIRE(hi.has_value());
    CHECK(*lo < *hi);
    CHECK(*lo > prev_lo);
    CHECK(*hi > prev_hi);
    prev_lo = *lo;
    prev_hi = *hi;
  }
}

TEST_CASE("asymptotic scaling constants") {
  CHECK(asymptotic_k_lower(kP) == doctest::Approx(0.438156372).epsilon(1e-8));
  CHECK(asymptotic_k_upper(kP) == doctest::Approx(0.439427203).epsilon(1e-8));
  CHECK(asymptotic_k_lower(kP) < asymptotic_k_upper(kP));

  // no primary traffic: the constant collapses to 1 - pf
  const auto quiet = SystemParams::make(0.8, 0.3, 0.0, 0.95, 10, 10, 0.5, 1);
  CHECK(asymptotic_k_lower(quiet) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(asymptotic_k_upper(quiet) == doctest::Approx(0.7).epsilon(1e-14));

  // pd == pf: the busy/idle mix no longer matters
  const auto flat = SystemParams::make(0.4, 0.4, 0.5, 0.95, 10, 10, 0.5, 1);
  CHECK(asymptotic_k_lower(flat) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(asymptotic_k_upper(flat) == doctest::Approx(0.6).epsilon(1e-12));
}
