#pragma once

// System parameters, derived constants, Rayleigh channel sampling, the
// primary-network outage/departure-rate formulas and the QoS-driven power
// control law of the secondary transmitters.

#include <vector>

#include "crmud/rng.hpp"

namespace crmud {

// All powers are noise-normalized linear values; the CLI converts from dB
// once at the boundary.
struct SystemParams {
  double pd;      // detection probability
  double pf;      // false alarm probability
  double lambda;  // primary packet arrival rate [packets/slot]
  double mu_min;  // minimum tolerable primary departure rate [packets/slot]
  double pp;      // primary transmit power (linear)
  double ps_max;  // secondary peak transmit power (linear)
  double rate;    // primary required rate R [bits/s/Hz]
  int n;          // number of secondary transmitters

  // Derived once at construction.
  double rp;  // (2^R - 1) / P_p
  double k;   // interference headroom: a secondary user with gain alpha
              // toward the primary receiver may transmit at power k/alpha

  // Validates every invariant and computes the derived constants. Throws
  // std::invalid_argument with a message naming the violated assumption.
  static SystemParams make(double pd, double pf, double lambda, double mu_min,
                           double pp, double ps_max, double rate, int n);

  // Same parameters with a different transmitter count.
  SystemParams with_n(int n) const;

  // Canonical parameter set used as the CLI default:
  // pd=0.8, pf=0.3, lambda=0.5, mu_min=0.95, Pp=10dB, Ps_max=Pp, R=0.5.
  static SystemParams defaults(int n);
};

// One slot's fading realization; every entry is marginally Exp(1).
struct ChannelDraw {
  std::vector<double> alpha_s;  // secondary tx -> primary rx
  std::vector<double> beta_s;   // secondary tx -> secondary rx
  double alpha_p = 0.0;         // primary tx -> primary rx
  double beta_p = 0.0;          // primary tx -> secondary rx
};

double derived_rp(const SystemParams& p);
double headroom_k(const SystemParams& p);

// Primary outage probability without secondary interference: 1 - exp(-R_p).
double outage_no_interference(const SystemParams& p);

// Primary outage probability when a secondary user with interference gain
// alpha transmits at power ps: 1 - exp(-R_p (1 + alpha*ps)).
double outage_with_interference(const SystemParams& p, double alpha, double ps);

// Primary departure rate mu(alpha, ps) =
//   pd*exp(-R_p) + (1-pd)*exp(-R_p(1 + alpha*ps)).
double departure_rate(const SystemParams& p, double alpha, double ps);

// Power that drives the departure rate down exactly to mu_min: k/alpha.
double power_cap(const SystemParams& p, double alpha);

// Transmit power after the peak constraint: min(k/alpha, ps_max).
double transmit_power(const SystemParams& p, double alpha);

// Received secondary SNR: transmit_power(alpha) * beta.
double received_snr(const SystemParams& p, double alpha, double beta);

// 2N+2 independent Exp(1) draws in a fixed order (alpha_s[0..N), beta_s[0..N),
// alpha_p, beta_p) so that streams are reproducible.
ChannelDraw sample_channels(const SystemParams& p, SplitMix64& rng);
void sample_channels_into(const SystemParams& p, SplitMix64& rng, ChannelDraw& out);

}  // namespace crmud
