#pragma once

// Experiment runner behind the CLI: parameter intake, sweeps over N, Monte
// Carlo estimates plus closed-form bounds, CSV emission and plot-data
// reshaping.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crmud/model.hpp"
#include "crmud/montecarlo.hpp"

namespace crmud {

struct ExperimentConfig {
  double pd = 0.8;
  double pf = 0.3;
  double lambda = 0.5;
  double mu_min = 0.95;
  double pp_db = 10.0;
  double psmax_db = 10.0;
  double rate = 0.5;
  std::vector<int> n_list;  // ascending; default 1..100
  long long trials = 100000;
  std::uint64_t seed = 12345;
  bool run_exact = true;  // max-SNR scheduler
  bool run_lower = true;  // two-stage scheduler
  bool run_upper = true;  // genie bound
  OccupancyMode::Kind occupancy = OccupancyMode::Kind::analytic;
  std::string output_path = "sweep.csv";

  static ExperimentConfig defaults();

  // Validates list/trial invariants and builds the SystemParams (throws
  // std::invalid_argument on bad values, naming the offending assumption).
  SystemParams make_params(int n) const;
  void validate() const;
};

// "1:100" (inclusive range), "10,20,50", or a single integer.
std::vector<int> parse_n_list(const std::string& text);

// Flat key=value file, '#' comments; unknown keys are an error. Keys match the
// CLI flag names with '-' replaced by '_'.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

// Comma-separated subset of {exact,lower,upper}.
void apply_scheduler_list(ExperimentConfig& cfg, const std::string& list);

// One CSV row per N. Deterministic for a fixed (config, seed); columns that
// are not applicable at an N are left empty.
void run_sweep(const ExperimentConfig& cfg, std::ostream& out);
void run_sweep_to_file(const ExperimentConfig& cfg);

// Reshape a sweep CSV into long-format (series_name, N, value, ci_half_width)
// rows; empty cells produce no row. Throws std::runtime_error on malformed
// input.
void emit_plot_data(std::istream& csv, std::ostream& out);

}  // namespace crmud
