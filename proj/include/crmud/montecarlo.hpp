#pragma once

// Slot-level simulation of the full system: primary traffic, sensing errors,
// scheduling and interference, producing capacity and departure-rate
// estimates with standard errors. Trials are seeded per-index from the master
// seed, so estimates are bit-identical across runs and across worker counts.

#include <cstdint>
#include <optional>
#include <vector>

#include "crmud/model.hpp"
#include "crmud/sched.hpp"

namespace crmud {

struct CapacityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

struct OccupancyMode {
  enum class Kind { analytic, queue };
  Kind kind = Kind::analytic;
  double mu_bar = 1.0;  // analytic mode: busy probability is min(1, lambda/mu_bar)

  static OccupancyMode analytic(double mu_bar) { return {Kind::analytic, mu_bar}; }
  static OccupancyMode queue() { return {Kind::queue, 0.0}; }
};

struct SlotOutcome {
  bool primary_busy = false;
  bool sensing_says_busy = false;
  std::optional<ScheduleDecision> decision;  // absent when the secondary stays silent
  double secondary_rate = 0.0;               // bits/s/Hz
  std::optional<bool> primary_success;       // engaged only when primary_busy
};

struct SimOptions {
  bool parallel = true;
  // Sensing probabilities used by the slot simulator; negative means "use the
  // params' values". Lets tests exercise pd/pf limits that the SystemParams
  // invariants exclude (e.g. pd = 1) without touching the power-control law.
  double pd_override = -1.0;
  double pf_override = -1.0;
};

// One slot with the primary busy state supplied by the caller.
SlotOutcome simulate_slot(const SystemParams& p, SchedulerKind sched, bool primary_busy,
                          SplitMix64& rng, const SimOptions& opts = {});

// One slot with the busy state drawn from an analytic occupancy mode.
SlotOutcome simulate_slot(const SystemParams& p, SchedulerKind sched,
                          const OccupancyMode& occupancy, SplitMix64& rng,
                          const SimOptions& opts = {});

struct SchedulerEstimates {
  CapacityEstimate total;      // secondary rate over all slots
  CapacityEstimate busy_part;  // contribution of busy slots (rate * 1{busy})
  CapacityEstimate idle_part;  // contribution of idle slots
  CapacityEstimate mu_hat;     // fraction of busy slots delivering the primary packet
};

struct MultiEstimate {
  std::vector<SchedulerEstimates> per_scheduler;  // aligned with the input kinds
};

// Evaluates every requested scheduler on a shared random stream: the channel
// draws and traffic/sensing coins per trial are identical for all kinds.
MultiEstimate estimate_capacity_multi(const SystemParams& p,
                                      const std::vector<SchedulerKind>& kinds,
                                      const OccupancyMode& occupancy, long long trials,
                                      std::uint64_t seed, const SimOptions& opts = {});

CapacityEstimate estimate_capacity(const SystemParams& p, SchedulerKind kind,
                                   const OccupancyMode& occupancy, long long trials,
                                   std::uint64_t seed, const SimOptions& opts = {});

// Same estimator with the OpenMP path disabled; kept as the reference
// implementation the parallel kernel is checked against.
CapacityEstimate estimate_capacity_serial(const SystemParams& p, SchedulerKind kind,
                                          const OccupancyMode& occupancy, long long trials,
                                          std::uint64_t seed);

// Empirical primary departure rate (units packets/slot) under a scheduler.
CapacityEstimate estimate_departure_rate(const SystemParams& p, SchedulerKind kind,
                                         long long trials, std::uint64_t seed,
                                         const SimOptions& opts = {});

struct QueueResult {
  double busy_fraction = 0.0;
  double empirical_mu = 0.0;  // successes per busy slot
  long long busy_slots = 0;
  bool saturated = false;  // queue never drained; busy fraction pinned near 1
};

// Explicit Bernoulli-arrival queue at the primary transmitter: an arrival may
// occur each slot, the head-of-line packet departs on primary success.
QueueResult simulate_queue(const SystemParams& p, SchedulerKind kind, long long slots,
                           std::uint64_t seed);

}  // namespace crmud
