#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <string>

#include "crmud/model.hpp"
#include "doctest.h"

using namespace crmud;

namespace {
const SystemParams kDefault = SystemParams::defaults(4);

// mu_min that makes the headroom constant equal exactly c.
SystemParams params_with_headroom(double c) {
  const double rp = (std::exp2(0.5) - 1.0) / 10.0;
  const double mu_min = 0.8 * std::exp(-rp) + 0.2 * std::exp(-rp * (1.0 + c));
  return SystemParams::make(0.8, 0.3, 0.5, mu_min, 10.0, 10.0, 0.5, 4);
}
}  // namespace

TEST_CASE("derived constants of the default set") {
  CHECK(kDefault.rp == doctest::Approx(0.04142135623730951).epsilon(1e-14));
  CHECK(kDefault.k == doctest::Approx(1.2158968694655173).epsilon(1e-10));
  CHECK(derived_rp(kDefault) == kDefault.rp);
  CHECK(headroom_k(kDefault) == doctest::Approx(kDefault.k).epsilon(1e-14));
}

TEST_CASE("derived_rp scaling") {
  const auto p1 = SystemParams::make(0.8, 0.3, 0.2, 0.3, 1.0, 1.0, 1.0, 1);
  CHECK(p1.rp == doctest::Approx(1.0));
  const auto p2 = SystemParams::make(0.8, 0.3, 0.5, 0.95, 20.0, 10.0, 0.5, 1);
  CHECK(p2.rp == doctest::Approx(kDefault.rp / 2.0).epsilon(1e-14));
}

TEST_CASE("headroom inversion reproduces a chosen constant") {
  for (double c : {0.5, 1.0, 2.0, 5.0}) {
    CHECK(params_with_headroom(c).k == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("parameter validation names the violated assumption") {
  CHECK_THROWS_AS(SystemParams::make(1.2, 0.3, 0.5, 0.95, 10, 10, 0.5, 4),
                  std::invalid_argument);
  // mu_min at or below pd*exp(-Rp): K undefined
  CHECK_THROWS_WITH_AS(SystemParams::make(0.8, 0.3, 0.5, 0.7, 10, 10, 0.5, 4),
                       doctest::Contains("mu_min"), std::invalid_argument);
  // mu_min above exp(-Rp): K comes out negative
  CHECK_THROWS_WITH_AS(SystemParams::make(0.8, 0.3, 0.5, 0.97, 10, 10, 0.5, 4),
                       doctest::Contains("K"), std::invalid_argument);
  // arrival rate at the stability boundary
  CHECK_THROWS_WITH_AS(SystemParams::make(0.8, 0.3, 0.97, 0.95, 10, 10, 0.5, 4),
                       doctest::Contains("lambda"), std::invalid_argument);
  // pd = 1 admits no feasible mu_min
  CHECK_THROWS_AS(SystemParams::make(1.0, 0.3, 0.5, 0.97, 10, 10, 0.5, 4),
                  std::invalid_argument);
}

TEST_CASE("outage probabilities") {
  CHECK(outage_no_interference(kDefault) == doctest::Approx(0.04057521485027228).epsilon(1e-12));
  // enormous primary power: outage vanishes
  const auto strong = SystemParams::make(0.5, 0.3, 0.5, 0.9, 1e9, 10.0, 0.5, 1);
  CHECK(outage_no_interference(strong) < 1e-8);
  CHECK(outage_with_interference(kDefault, 0.7, 0.0) ==
        doctest::Approx(outage_no_interference(kDefault)).epsilon(1e-14));
  CHECK(outage_with_interference(kDefault, 1.0, kDefault.k) ==
        doctest::Approx(0.08769914059891087).epsilon(1e-10));
}

TEST_CASE("outage matches empirical frequency") {
  SplitMix64 rng(5);
  const long long n = 1000000;
  long long out_free = 0, out_inf = 0;
  const double alpha = 1.3, ps = 2.0;
  for (long long i = 0; i < n; ++i) {
    const double ap = rng.exponential();
    if (std::log2(1.0 + ap * kDefault.pp) < kDefault.rate) ++out_free;
    if (std::log2(1.0 + ap * kDefault.pp / (1.0 + alpha * ps)) < kDefault.rate) ++out_inf;
  }
  auto within4 = [n](long long count, double prob) {
    const double se = std::sqrt(prob * (1.0 - prob) / n);
    return std::fabs(static_cast<double>(count) / n - prob) <= 4.0 * se;
  };
  CHECK(within4(out_free, outage_no_interference(kDefault)));
  CHECK(within4(out_inf, outage_with_interference(kDefault, alpha, ps)));
}

TEST_CASE("departure rate limits and inversion") {
  const double mu_free = std::exp(-kDefault.rp);
  CHECK(departure_rate(kDefault, 0.7, 0.0) == doctest::Approx(mu_free).epsilon(1e-14));
  CHECK(departure_rate(kDefault, 1e3, 1e3) ==
        doctest::Approx(0.8 * mu_free).epsilon(1e-10));
  SplitMix64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = rng.exponential();
    CHECK(std::fabs(departure_rate(kDefault, alpha, power_cap(kDefault, alpha)) -
                    kDefault.mu_min) <= 1e-12);
  }
}

TEST_CASE("departure rate consistency with the two outage terms") {
  SplitMix64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = rng.exponential();
    const double ps = 10.0 * rng.uniform_open01();
    const double lhs = departure_rate(kDefault, alpha, ps);
    const double rhs = kDefault.pd * (1.0 - outage_no_interference(kDefault)) +
                       (1.0 - kDefault.pd) * (1.0 - outage_with_interference(kDefault, alpha, ps));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
  }
}

TEST_CASE("departure rate monotone in power, transmit power monotone in alpha") {
  double prev = departure_rate(kDefault, 0.8, 0.0);
  for (double ps = 0.5; ps <= 20.0; ps += 0.5) {
    const double mu = departure_rate(kDefault, 0.8, ps);
    CHECK(mu < prev);
    prev = mu;
  }
  double prev_power = transmit_power(kDefault, 1e-3);
  for (double alpha = 0.01; alpha <= 10.0; alpha += 0.01) {
    const double pw = transmit_power(kDefault, alpha);
    CHECK(pw <= prev_power);
    prev_power = pw;
  }
}

TEST_CASE("power control values") {
  CHECK(power_cap(kDefault, 1.0) == doctest::Approx(kDefault.k).epsilon(1e-14));
  CHECK(power_cap(kDefault, 0.05) == doctest::Approx(kDefault.k / 0.05).epsilon(1e-14));
  const double boundary = kDefault.k / kDefault.ps_max;
  CHECK(power_cap(kDefault, boundary) == doctest::Approx(kDefault.ps_max).epsilon(1e-14));
  CHECK(transmit_power(kDefault, 2.0) == doctest::Approx(kDefault.k / 2.0).epsilon(1e-14));
  CHECK(transmit_power(kDefault, 0.05) == kDefault.ps_max);
  CHECK(transmit_power(kDefault, boundary) == doctest::Approx(kDefault.ps_max).epsilon(1e-14));
  // QoS holds for every alpha once the cap is applied
  SplitMix64 rng(31);
  for (int i = 0; i < 10000; ++i) {
    const double alpha = rng.exponential();
    CHECK(departure_rate(kDefault, alpha, transmit_power(kDefault, alpha)) >=
          kDefault.mu_min - 1e-12);
  }
}

TEST_CASE("received SNR branches") {
  CHECK(received_snr(kDefault, 0.5, 1.0) == doctest::Approx(2.0 * kDefault.k).epsilon(1e-14));
  CHECK(received_snr(kDefault, 0.05, 0.5) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(received_snr(kDefault, 0.5, 1e-14) < 1e-10);
}

TEST_CASE("saturation probability of the power cap") {
  SplitMix64 rng(41);
  const long long n = 100000;
  long long saturated = 0;
  for (long long i = 0; i < n; ++i) {
    if (power_cap(kDefault, rng.exponential()) >= kDefault.ps_max) ++saturated;
  }
  const double prob = -std::expm1(-kDefault.k / kDefault.ps_max);
  const double se = std::sqrt(prob * (1.0 - prob) / n);
  CHECK(std::fabs(static_cast<double>(saturated) / n - prob) <= 4.0 * se);
}

TEST_CASE("channel sampler moments") {
  SplitMix64 rng(43);
  const auto p = kDefault.with_n(10);
  const long long draws = 100000;  // 10^6 alpha_s samples
  double sum = 0.0, sumsq = 0.0;
  long long below_one = 0;
  ChannelDraw d;
  for (long long i = 0; i < draws; ++i) {
    sample_channels_into(p, rng, d);
    REQUIRE(d.alpha_s.size() == 10);
    REQUIRE(d.beta_s.size() == 10);
    for (const double a : d.alpha_s) {
      sum += a;
      sumsq += a * a;
      if (a <= 1.0) ++below_one;
    }
    REQUIRE(d.alpha_p > 0.0);
    REQUIRE(d.beta_p > 0.0);
  }
  const double n = static_cast<double>(draws) * 10.0;
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.004));
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
  CHECK(static_cast<double>(below_one) / n ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.004));
}
