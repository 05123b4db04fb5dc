#pragma once

// The three user-selection rules whose capacities bracket and realize the
// multiuser diversity gain: max-SNR, the two-stage saturated-set rule, and
// the genie construction combining best gains across users.

#include "crmud/model.hpp"

namespace crmud {

enum class SchedulerKind { silent, max_snr, two_stage, genie };

enum class SnrBranch { unsaturated, saturated, genie_unsaturated, genie_saturated };

struct ScheduleDecision {
  int index = -1;       // scheduled transmitter, -1 when nothing transmits
  double power = 0.0;   // transmit power in [0, ps_max]
  double snr = 0.0;     // received secondary SNR
  SnrBranch branch = SnrBranch::unsaturated;
  // Gain toward the primary receiver that scales the interference the primary
  // sees. For the genie branches this is the minimum alpha across users,
  // consistent with the bound's construction.
  double interference_gain = 0.0;
};

// Picks the transmitter with the largest received SNR min(k/alpha, ps_max)*beta.
// Ties broken by lowest index.
ScheduleDecision schedule_max_snr(const SystemParams& p, const ChannelDraw& draw);

// Two-stage rule: among the users whose power cap saturates (k/alpha > ps_max),
// pick the largest forward gain beta at power ps_max; if no user saturates,
// fall back to the max-SNR rule (whose power is then k/alpha).
ScheduleDecision schedule_two_stage(const SystemParams& p, const ChannelDraw& draw);

// Genie SNR: k*max(beta)/min(alpha) while max power cap fits under ps_max,
// else ps_max*max(beta). The reported index is the argmax-beta transmitter,
// kept for tracing only.
ScheduleDecision genie_upper_snr(const SystemParams& p, const ChannelDraw& draw);

// Dispatch on kind; SchedulerKind::silent yields a no-transmission decision.
ScheduleDecision schedule(SchedulerKind kind, const SystemParams& p, const ChannelDraw& draw);

}  // namespace crmud
