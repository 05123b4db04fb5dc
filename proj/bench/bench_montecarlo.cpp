// Compares the serial reference estimator against the OpenMP kernel and
// verifies the two produce bit-identical results.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "crmud/montecarlo.hpp"

using namespace crmud;

namespace {

template <typename F>
double time_of(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 50;
  const long long trials = argc > 2 ? std::atoll(argv[2]) : 200000;
  const auto p = SystemParams::defaults(n);
  const OccupancyMode occ = OccupancyMode::analytic(p.mu_min);
  const std::uint64_t seed = 2024;

  std::printf("N=%d trials=%lld threads=%d\n", n, trials, omp_get_max_threads());

  CapacityEstimate serial, parallel;
  // warm-up pass so neither branch pays first-touch costs
  (void)estimate_capacity(p, SchedulerKind::max_snr, occ, 10000, seed);

  const double t_serial = time_of([&] {
    serial = estimate_capacity_serial(p, SchedulerKind::max_snr, occ, trials, seed);
  });
  const double t_parallel = time_of([&] {
    parallel = estimate_capacity(p, SchedulerKind::max_snr, occ, trials, seed);
  });

  std::printf("serial   : %8.3f s  mean=%.10f se=%.3e\n", t_serial, serial.mean,
              serial.std_error);
  std::printf("parallel : %8.3f s  mean=%.10f se=%.3e\n", t_parallel, parallel.mean,
              parallel.std_error);
  std::printf("speedup  : %.2fx\n", t_serial / t_parallel);

  const bool identical = serial.mean == parallel.mean &&
                         serial.std_error == parallel.std_error &&
                         serial.trials == parallel.trials;
  std::printf("results  : %s\n", identical ? "bit-identical" : "MISMATCH");
  return identical ? 0 : 1;
}
