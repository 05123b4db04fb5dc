#include "crmud/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crmud {

namespace {

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument("SystemParams: " + msg); }

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " must be in [0,1], got " << v;
    reject(os.str());
  }
}

}  // namespace

SystemParams SystemParams::make(double pd, double pf, double lambda, double mu_min,
                                double pp, double ps_max, double rate, int n) {
  check_probability(pd, "p_d");
  check_probability(pf, "p_f");
  check_probability(lambda, "lambda");
  if (!(mu_min > 0.0 && mu_min <= 1.0)) reject("mu_min must be in (0,1]");
  if (!(pp > 0.0)) reject("P_p must be positive");
  if (!(ps_max > 0.0)) reject("P_s,max must be positive");
  if (!(rate > 0.0)) reject("R must be positive");
  if (n < 1) reject("N must be at least 1");

  SystemParams p{pd, pf, lambda, mu_min, pp, ps_max, rate, n, 0.0, 0.0};
  p.rp = (std::exp2(rate) - 1.0) / pp;

  const double floor = pd * std::exp(-p.rp);
  if (!(mu_min > floor)) {
    std::ostringstream os;
    os << "mu_min (" << mu_min << ") must exceed p_d*exp(-R_p) (" << floor
       << "); the power-control constant K is undefined otherwise";
    reject(os.str());
  }
  p.k = (1.0 / p.rp) * std::log((1.0 - pd) / (mu_min - floor)) - 1.0;
  if (!(p.k > 0.0)) {
    std::ostringstream os;
    os << "derived interference headroom K = " << p.k
       << " must be positive; lower mu_min or the detection/rate parameters";
    reject(os.str());
  }

  const double mu_free = std::exp(-p.rp);
  if (!(lambda < mu_free)) {
    std::ostringstream os;
    os << "lambda (" << lambda << ") must stay below the interference-free departure rate exp(-R_p) ("
       << mu_free << ") for a stable primary queue";
    reject(os.str());
  }
  return p;
}

SystemParams SystemParams::with_n(int new_n) const {
  if (new_n < 1) reject("N must be at least 1");
  SystemParams p = *this;
  p.n = new_n;
  return p;
}

SystemParams SystemParams::defaults(int n) {
  return make(0.8, 0.3, 0.5, 0.95, 10.0, 10.0, 0.5, n);
}

double derived_rp(const SystemParams& p) { return (std::exp2(p.rate) - 1.0) / p.pp; }

double headroom_k(const SystemParams& p) {
  return (1.0 / p.rp) * std::log((1.0 - p.pd) / (p.mu_min - p.pd * std::exp(-p.rp))) - 1.0;
}

double outage_no_interference(const SystemParams& p) { return -std::expm1(-p.rp); }

double outage_with_interference(const SystemParams& p, double alpha, double ps) {
  return -std::expm1(-p.rp * (1.0 + alpha * ps));
}

double departure_rate(const SystemParams& p, double alpha, double ps) {
  return p.pd * std::exp(-p.rp) + (1.0 - p.pd) * std::exp(-p.rp * (1.0 + alpha * ps));
}

double power_cap(const SystemParams& p, double alpha) { return p.k / alpha; }

double transmit_power(const SystemParams& p, double alpha) {
  if (p.k <= 0.0) return 0.0;  // unreachable after construction; guarded anyway
  return std::fmin(p.k / alpha, p.ps_max);
}

double received_snr(const SystemParams& p, double alpha, double beta) {
  return transmit_power(p, alpha) * beta;
}

void sample_channels_into(const SystemParams& p, SplitMix64& rng, ChannelDraw& out) {
  out.alpha_s.resize(static_cast<std::size_t>(p.n));
  out.beta_s.resize(static_cast<std::size_t>(p.n));
  for (auto& a : out.alpha_s) a = rng.exponential();
  for (auto& b : out.beta_s) b = rng.exponential();
  out.alpha_p = rng.exponential();
  out.beta_p = rng.exponential();
}

ChannelDraw sample_channels(const SystemParams& p, SplitMix64& rng) {
  ChannelDraw d;
  sample_channels_into(p, rng, d);
  return d;
}

}  // namespace crmud
