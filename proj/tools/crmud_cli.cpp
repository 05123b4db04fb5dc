// crmud: capacity sweeps for an interweaved cognitive-radio secondary network.
//
// Exit codes: 0 success, 2 usage error, 3 invalid parameters, 4 I/O error.

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "crmud/sweep.hpp"

namespace {

int run_sweep_command(const crmud::ExperimentConfig& cfg) {
  crmud::run_sweep_to_file(cfg);
  std::cerr << "wrote " << cfg.output_path << "\n";
  return 0;
}

int run_plot_command(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "error: cannot open '" << in_path << "'\n";
    return 4;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "'\n";
    return 4;
  }
  crmud::emit_plot_data(in, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo and closed-form capacity analysis of opportunistic "
               "secondary-user scheduling under a primary QoS constraint"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "Run a capacity sweep over N and write a CSV");
  crmud::ExperimentConfig cfg = crmud::ExperimentConfig::defaults();
  std::string n_list_text, schedulers_text, occupancy_text, config_path;
  sweep->add_option("--pd", cfg.pd, "Detection probability");
  sweep->add_option("--pf", cfg.pf, "False alarm probability");
  sweep->add_option("--lambda", cfg.lambda, "Primary packet arrival rate [packets/slot]");
  sweep->add_option("--mu-min", cfg.mu_min, "Minimum primary departure rate [packets/slot]");
  sweep->add_option("--pp-db", cfg.pp_db, "Primary transmit power [dB]");
  sweep->add_option("--psmax-db", cfg.psmax_db, "Secondary peak transmit power [dB]");
  sweep->add_option("--rate", cfg.rate, "Primary required rate R [bits/s/Hz]");
  sweep->add_option("--n-list", n_list_text, "Transmitter counts: 'lo:hi' or 'a,b,c'");
  sweep->add_option("--trials", cfg.trials, "Simulated slots per N");
  sweep->add_option("--seed", cfg.seed, "Master RNG seed");
  sweep->add_option("--schedulers", schedulers_text, "Subset of exact,lower,upper");
  sweep->add_option("--occupancy", occupancy_text, "analytic or queue")
      ->check(CLI::IsMember({"analytic", "queue"}));
  sweep->add_option("--config", config_path, "key=value config file (flags override it)");
  sweep->add_option("--out", cfg.output_path, "Output CSV path");

  auto* plot = app.add_subcommand("plot", "Reshape a sweep CSV into long-format plot data");
  std::string plot_in, plot_out = "plot.csv";
  plot->add_option("--in", plot_in, "Sweep CSV produced by 'sweep'")->required();
  plot->add_option("--out", plot_out, "Long-format output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) {
      // File values first, then re-apply any flags the user actually passed.
      if (!config_path.empty()) {
        crmud::ExperimentConfig from_file = crmud::ExperimentConfig::defaults();
        crmud::apply_config_file(from_file, config_path);
        auto keep = [&](const char* flag, auto member, auto& dst) {
          if (sweep->count(flag) == 0) dst.*member = from_file.*member;
        };
        keep("--pd", &crmud::ExperimentConfig::pd, cfg);
        keep("--pf", &crmud::ExperimentConfig::pf, cfg);
        keep("--lambda", &crmud::ExperimentConfig::lambda, cfg);
        keep("--mu-min", &crmud::ExperimentConfig::mu_min, cfg);
        keep("--pp-db", &crmud::ExperimentConfig::pp_db, cfg);
        keep("--psmax-db", &crmud::ExperimentConfig::psmax_db, cfg);
        keep("--rate", &crmud::ExperimentConfig::rate, cfg);
        keep("--trials", &crmud::ExperimentConfig::trials, cfg);
        keep("--seed", &crmud::ExperimentConfig::seed, cfg);
        keep("--out", &crmud::ExperimentConfig::output_path, cfg);
        if (sweep->count("--n-list") == 0) cfg.n_list = from_file.n_list;
        if (sweep->count("--occupancy") == 0) cfg.occupancy = from_file.occupancy;
        if (sweep->count("--schedulers") == 0) {
          cfg.run_exact = from_file.run_exact;
          cfg.run_lower = from_file.run_lower;
          cfg.run_upper = from_file.run_upper;
        }
      }
      if (!n_list_text.empty()) cfg.n_list = crmud::parse_n_list(n_list_text);
      if (!schedulers_text.empty()) crmud::apply_scheduler_list(cfg, schedulers_text);
      if (occupancy_text == "analytic") cfg.occupancy = crmud::OccupancyMode::Kind::analytic;
      if (occupancy_text == "queue") cfg.occupancy = crmud::OccupancyMode::Kind::queue;
      return run_sweep_command(cfg);
    }
    return run_plot_command(plot_in, plot_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
