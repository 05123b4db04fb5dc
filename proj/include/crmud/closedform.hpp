#pragma once

// Exact evaluation of the asymptotic capacity bound expressions and the
// k*log2(ln N) scaling constants.

#include <optional>

#include "crmud/model.hpp"

namespace crmud {

struct ProbUnsaturated {
  double series;  // exp(K / (Ps_max * ln(1 - 1/N))), the series form the bounds use
  double exact;  // exp(-N K / Ps_max) = Pr[max_i power cap <= Ps_max]
};

// Probability that no user's power cap saturates. Requires N >= 2 for the
// first form; throws std::domain_error below that.
ProbUnsaturated prob_unsaturated(const SystemParams& p, int n);
double prob_unsaturated_exact(const SystemParams& p, int n);  // defined for N >= 1

// Effective SNR level of the unsaturated branch of the lower bound:
// Ps_max * W(K N / Ps_max * exp(K / Ps_max)) - K.
double b_n_low1(const SystemParams& p, int n);

// Average departure rate over users in the saturated regime (lower bound).
double m_avg_lower(const SystemParams& p);

// Average departure rate for the minimum interference gain over N users
// (upper bound); tends to exp(-R_p) as N grows.
double m_avg_upper(const SystemParams& p, int n);

// Asymptotic lower/upper bounds on the secondary average capacity. Empty when
// the expression is not applicable at this N (inner logarithm non-positive),
// which happens only at small N where the asymptotic statement has no force.
std::optional<double> lower_bound_capacity(const SystemParams& p, int n);
std::optional<double> upper_bound_capacity(const SystemParams& p, int n);

// Scaling constants: the bounds grow like k * log2(ln N).
double asymptotic_k_lower(const SystemParams& p);
double asymptotic_k_upper(const SystemParams& p);

}  // namespace crmud
