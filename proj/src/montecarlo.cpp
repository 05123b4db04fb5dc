#include "crmud/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace crmud {

namespace {

constexpr long long kChunk = 1024;  // fixed chunk size keeps sums independent of thread count

double busy_probability(const SystemParams& p, const OccupancyMode& occ) {
  return std::fmin(1.0, p.lambda / occ.mu_bar);
}

struct SlotEval {
  double rate = 0.0;
  bool transmitted = false;
  bool success = false;  // meaningful only for busy slots
};

// Rates and primary success for one slot given the shared draw and coins.
// decision == nullptr means the secondary network stays silent.
SlotEval eval_slot(const SystemParams& p, const ScheduleDecision* decision, bool busy,
                   double u_sense, double pd, double pf, const ChannelDraw& draw) {
  SlotEval e;
  if (busy) {
    const bool detected = u_sense < pd;
    if (detected || decision == nullptr) {
      e.success = draw.alpha_p >= p.rp;
    } else {
      e.transmitted = true;
      e.rate = std::log2(1.0 + decision->snr / (1.0 + draw.beta_p * p.pp));
      e.success = draw.alpha_p >= p.rp * (1.0 + decision->interference_gain * decision->power);
    }
  } else {
    const bool false_alarm = u_sense < pf;
    if (!false_alarm && decision != nullptr) {
      e.transmitted = true;
      e.rate = std::log2(1.0 + decision->snr);
    }
  }
  return e;
}

struct Acc {
  double sum = 0.0, sumsq = 0.0;
  double busy_sum = 0.0, busy_sumsq = 0.0;
  double idle_sum = 0.0, idle_sumsq = 0.0;
  long long busy = 0, succ = 0;

  void add(const SlotEval& e, bool busy_slot) {
    sum += e.rate;
    sumsq += e.rate * e.rate;
    if (busy_slot) {
      busy_sum += e.rate;
      busy_sumsq += e.rate * e.rate;
      ++busy;
      if (e.success) ++succ;
    } else {
      idle_sum += e.rate;
      idle_sumsq += e.rate * e.rate;
    }
  }

  void merge(const Acc& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    busy_sum += o.busy_sum;
    busy_sumsq += o.busy_sumsq;
    idle_sum += o.idle_sum;
    idle_sumsq += o.idle_sumsq;
    busy += o.busy;
    succ += o.succ;
  }
};

CapacityEstimate estimate_from(double sum, double sumsq, long long n) {
  CapacityEstimate est;
  est.trials = n;
  if (n <= 0) return est;
  est.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::fmax(0.0, (sumsq - static_cast<double>(n) * est.mean * est.mean) /
                                          static_cast<double>(n - 1));
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

CapacityEstimate proportion_estimate(long long succ, long long n) {
  CapacityEstimate est;
  est.trials = n;
  if (n <= 0) return est;
  const double ph = static_cast<double>(succ) / static_cast<double>(n);
  est.mean = ph;
  est.std_error = std::sqrt(std::fmax(0.0, ph * (1.0 - ph)) / static_cast<double>(n));
  return est;
}

SchedulerEstimates finalize(const Acc& a, long long trials) {
  SchedulerEstimates s;
  s.total = estimate_from(a.sum, a.sumsq, trials);
  s.busy_part = estimate_from(a.busy_sum, a.busy_sumsq, trials);
  s.idle_part = estimate_from(a.idle_sum, a.idle_sumsq, trials);
  s.mu_hat = proportion_estimate(a.succ, a.busy);
  return s;
}

}  // namespace

SlotOutcome simulate_slot(const SystemParams& p, SchedulerKind sched, bool primary_busy,
                          SplitMix64& rng, const SimOptions& opts) {
  const double pd = opts.pd_override >= 0.0 ? opts.pd_override : p.pd;
  const double pf = opts.pf_override >= 0.0 ? opts.pf_override : p.pf;
  ChannelDraw draw = sample_channels(p, rng);
  const double u_sense = rng.uniform_open01();

  SlotOutcome out;
  out.primary_busy = primary_busy;
  out.sensing_says_busy = primary_busy ? (u_sense < pd) : (u_sense < pf);

  const bool silent = sched == SchedulerKind::silent || out.sensing_says_busy;
  ScheduleDecision d;
  const ScheduleDecision* dp = nullptr;
  if (!silent) {
    d = schedule(sched, p, draw);
    dp = &d;
  }
  const SlotEval e = eval_slot(p, dp, primary_busy, u_sense, pd, pf, draw);
  out.secondary_rate = e.rate;
  if (dp != nullptr && e.transmitted) out.decision = d;
  if (primary_busy) out.primary_success = e.success;
  return out;
}

SlotOutcome simulate_slot(const SystemParams& p, SchedulerKind sched,
                          const OccupancyMode& occupancy, SplitMix64& rng,
                          const SimOptions& opts) {
  const double pb = busy_probability(p, occupancy);
  const bool busy = rng.uniform_open01() < pb;
  return simulate_slot(p, sched, busy, rng, opts);
}

MultiEstimate estimate_capacity_multi(const SystemParams& p,
                                      const std::vector<SchedulerKind>& kinds,
                                      const OccupancyMode& occupancy, long long trials,
                                      std::uint64_t seed, const SimOptions& opts) {
  const std::size_t ns = kinds.size();
  const double pd = opts.pd_override >= 0.0 ? opts.pd_override : p.pd;
  const double pf = opts.pf_override >= 0.0 ? opts.pf_override : p.pf;

  MultiEstimate result;
  result.per_scheduler.resize(ns);
  if (trials <= 0 || ns == 0) return result;

  if (occupancy.kind == OccupancyMode::Kind::queue) {
    // Queue trajectories depend on the scheduler, so each kind carries its own
    // queue state; the fading and coin stream stays shared.
    std::vector<long long> q(ns, 0);
    std::vector<Acc> acc(ns);
    ChannelDraw draw;
    for (long long t = 0; t < trials; ++t) {
      SplitMix64 rng = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(t));
      const double u_arr = rng.uniform_open01();
      sample_channels_into(p, rng, draw);
      const double u_sense = rng.uniform_open01();
      const bool arrival = u_arr < p.lambda;
      for (std::size_t s = 0; s < ns; ++s) {
        if (arrival) ++q[s];
        const bool busy = q[s] > 0;
        const bool sensed = busy ? (u_sense < pd) : (u_sense < pf);
        ScheduleDecision d;
        const ScheduleDecision* dp = nullptr;
        if (!sensed && kinds[s] != SchedulerKind::silent) {
          d = schedule(kinds[s], p, draw);
          dp = &d;
        }
        const SlotEval e = eval_slot(p, dp, busy, u_sense, pd, pf, draw);
        acc[s].add(e, busy);
        if (busy && e.success) --q[s];
      }
    }
    for (std::size_t s = 0; s < ns; ++s) result.per_scheduler[s] = finalize(acc[s], trials);
    return result;
  }

  const double pb = busy_probability(p, occupancy);
  const long long num_chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::vector<Acc>> chunk_acc(static_cast<std::size_t>(num_chunks),
                                          std::vector<Acc>(ns));

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (long long c = 0; c < num_chunks; ++c) {
    ChannelDraw draw;
    std::vector<Acc>& acc = chunk_acc[static_cast<std::size_t>(c)];
    const long long begin = c * kChunk;
    const long long end = std::min(trials, begin + kChunk);
    for (long long t = begin; t < end; ++t) {
      SplitMix64 rng = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(t));
      const bool busy = rng.uniform_open01() < pb;
      sample_channels_into(p, rng, draw);
      const double u_sense = rng.uniform_open01();
      const bool sensed = busy ? (u_sense < pd) : (u_sense < pf);
      for (std::size_t s = 0; s < ns; ++s) {
        ScheduleDecision d;
        const ScheduleDecision* dp = nullptr;
        if (!sensed && kinds[s] != SchedulerKind::silent) {
          d = schedule(kinds[s], p, draw);
          dp = &d;
        }
        acc[s].add(eval_slot(p, dp, busy, u_sense, pd, pf, draw), busy);
      }
    }
  }

  std::vector<Acc> merged(ns);
  for (long long c = 0; c < num_chunks; ++c) {
    for (std::size_t s = 0; s < ns; ++s) merged[s].merge(chunk_acc[static_cast<std::size_t>(c)][s]);
  }
  for (std::size_t s = 0; s < ns; ++s) result.per_scheduler[s] = finalize(merged[s], trials);
  return result;
}

CapacityEstimate estimate_capacity(const SystemParams& p, SchedulerKind kind,
                                   const OccupancyMode& occupancy, long long trials,
                                   std::uint64_t seed, const SimOptions& opts) {
  return estimate_capacity_multi(p, {kind}, occupancy, trials, seed, opts)
      .per_scheduler.front()
      .total;
}

CapacityEstimate estimate_capacity_serial(const SystemParams& p, SchedulerKind kind,
                                          const OccupancyMode& occupancy, long long trials,
                                          std::uint64_t seed) {
  SimOptions opts;
  opts.parallel = false;
  return estimate_capacity(p, kind, occupancy, trials, seed, opts);
}

CapacityEstimate estimate_departure_rate(const SystemParams& p, SchedulerKind kind,
                                         long long trials, std::uint64_t seed,
                                         const SimOptions& opts) {
  return estimate_capacity_multi(p, {kind}, OccupancyMode::analytic(p.mu_min), trials, seed,
                                 opts)
      .per_scheduler.front()
      .mu_hat;
}

QueueResult simulate_queue(const SystemParams& p, SchedulerKind kind, long long slots,
                           std::uint64_t seed) {
  QueueResult r;
  if (slots <= 0) return r;
  long long q = 0, busy_slots = 0, successes = 0;
  ChannelDraw draw;
  for (long long t = 0; t < slots; ++t) {
    SplitMix64 rng = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(t));
    const double u_arr = rng.uniform_open01();
    sample_channels_into(p, rng, draw);
    const double u_sense = rng.uniform_open01();
    if (u_arr < p.lambda) ++q;
    if (q == 0) continue;
    ++busy_slots;
    const bool sensed = u_sense < p.pd;
    ScheduleDecision d;
    const ScheduleDecision* dp = nullptr;
    if (!sensed && kind != SchedulerKind::silent) {
      d = schedule(kind, p, draw);
      dp = &d;
    }
    const SlotEval e = eval_slot(p, dp, /*busy=*/true, u_sense, p.pd, p.pf, draw);
    if (e.success) {
      ++successes;
      --q;
    }
  }
  r.busy_slots = busy_slots;
  r.busy_fraction = static_cast<double>(busy_slots) / static_cast<double>(slots);
  r.empirical_mu = busy_slots > 0 ? static_cast<double>(successes) / static_cast<double>(busy_slots) : 0.0;
  r.saturated = r.busy_fraction > 0.999;
  return r;
}

}  // namespace crmud
