#include "crmud/sched.hpp"

#include <cmath>
#include <cstddef>

namespace crmud {

ScheduleDecision schedule_max_snr(const SystemParams& p, const ChannelDraw& draw) {
  const std::size_t n = draw.alpha_s.size();
  int best = 0;
  double best_snr = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double snr = std::fmin(p.k / draw.alpha_s[i], p.ps_max) * draw.beta_s[i];
    if (snr > best_snr) {
      best_snr = snr;
      best = static_cast<int>(i);
    }
  }
  ScheduleDecision d;
  d.index = best;
  d.power = std::fmin(p.k / draw.alpha_s[best], p.ps_max);
  d.snr = best_snr;
  d.branch = (p.k / draw.alpha_s[best] < p.ps_max) ? SnrBranch::unsaturated : SnrBranch::saturated;
  d.interference_gain = draw.alpha_s[best];
  return d;
}

ScheduleDecision schedule_two_stage(const SystemParams& p, const ChannelDraw& draw) {
  const std::size_t n = draw.alpha_s.size();
  const double sat_threshold = p.k / p.ps_max;  // power cap exceeds ps_max iff alpha below this
  int best = -1;
  double best_beta = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (draw.alpha_s[i] < sat_threshold && draw.beta_s[i] > best_beta) {
      best_beta = draw.beta_s[i];
      best = static_cast<int>(i);
    }
  }
  if (best < 0) return schedule_max_snr(p, draw);
  ScheduleDecision d;
  d.index = best;
  d.power = p.ps_max;
  d.snr = p.ps_max * best_beta;
  d.branch = SnrBranch::saturated;
  d.interference_gain = draw.alpha_s[best];
  return d;
}

ScheduleDecision genie_upper_snr(const SystemParams& p, const ChannelDraw& draw) {
  const std::size_t n = draw.alpha_s.size();
  std::size_t i_beta = 0, i_alpha = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (draw.beta_s[i] > draw.beta_s[i_beta]) i_beta = i;
    if (draw.alpha_s[i] < draw.alpha_s[i_alpha]) i_alpha = i;
  }
  const double min_alpha = draw.alpha_s[i_alpha];
  const double max_beta = draw.beta_s[i_beta];
  ScheduleDecision d;
  d.index = static_cast<int>(i_beta);
  d.interference_gain = min_alpha;
  if (p.k / min_alpha <= p.ps_max) {
    d.power = p.k / min_alpha;
    d.snr = p.k * max_beta / min_alpha;
    d.branch = SnrBranch::genie_unsaturated;
  } else {
    d.power = p.ps_max;
    d.snr = p.ps_max * max_beta;
    d.branch = SnrBranch::genie_saturated;
  }
  return d;
}

ScheduleDecision schedule(SchedulerKind kind, const SystemParams& p, const ChannelDraw& draw) {
  switch (kind) {
    case SchedulerKind::max_snr:
      return schedule_max_snr(p, draw);
    case SchedulerKind::two_stage:
      return schedule_two_stage(p, draw);
    case SchedulerKind::genie:
      return genie_upper_snr(p, draw);
    case SchedulerKind::silent:
      break;
  }
  return ScheduleDecision{};
}

}  // namespace crmud
