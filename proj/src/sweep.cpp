#include "crmud/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "crmud/closedform.hpp"

namespace crmud {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t sub_seed(std::uint64_t seed, int n, std::uint64_t salt) {
  return SplitMix64::mix(seed + 0x632BE59BD9B4E019ULL * static_cast<std::uint64_t>(n) + salt);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  cfg.n_list.resize(100);
  for (int i = 0; i < 100; ++i) cfg.n_list[static_cast<std::size_t>(i)] = i + 1;
  return cfg;
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw std::invalid_argument("n-list must be nonempty");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw std::invalid_argument("n-list must be strictly ascending");
  }
  if (n_list.front() < 1) throw std::invalid_argument("n-list entries must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!run_exact && !run_lower && !run_upper) {
    throw std::invalid_argument("at least one scheduler must be selected");
  }
  make_params(n_list.front());  // surfaces SystemParams violations early
}

SystemParams ExperimentConfig::make_params(int n) const {
  return SystemParams::make(pd, pf, lambda, mu_min, db_to_linear(pp_db),
                            db_to_linear(psmax_db), rate, n);
}

std::vector<int> parse_n_list(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("n-list: empty specification");
  std::vector<int> out;
  const auto colon = t.find(':');
  if (colon != std::string::npos) {
    const int lo = std::stoi(t.substr(0, colon));
    const int hi = std::stoi(t.substr(colon + 1));
    if (lo < 1 || hi < lo) throw std::invalid_argument("n-list: bad range '" + t + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (const auto& piece : split(t, ',')) {
    const std::string ps = trim(piece);
    if (ps.empty()) throw std::invalid_argument("n-list: empty element in '" + t + "'");
    out.push_back(std::stoi(ps));
  }
  return out;
}

void apply_scheduler_list(ExperimentConfig& cfg, const std::string& list) {
  cfg.run_exact = cfg.run_lower = cfg.run_upper = false;
  for (const auto& piece : split(list, ',')) {
    const std::string s = trim(piece);
    if (s == "exact") {
      cfg.run_exact = true;
    } else if (s == "lower") {
      cfg.run_lower = true;
    } else if (s == "upper") {
      cfg.run_upper = true;
    } else {
      throw std::invalid_argument("schedulers: unknown entry '" + s +
                                  "' (expected subset of exact,lower,upper)");
    }
  }
  if (!cfg.run_exact && !cfg.run_lower && !cfg.run_upper) {
    throw std::invalid_argument("schedulers: list is empty");
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config:" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    try {
      if (key == "pd") {
        cfg.pd = std::stod(val);
      } else if (key == "pf") {
        cfg.pf = std::stod(val);
      } else if (key == "lambda") {
        cfg.lambda = std::stod(val);
      } else if (key == "mu_min") {
        cfg.mu_min = std::stod(val);
      } else if (key == "pp_db") {
        cfg.pp_db = std::stod(val);
      } else if (key == "psmax_db") {
        cfg.psmax_db = std::stod(val);
      } else if (key == "rate") {
        cfg.rate = std::stod(val);
      } else if (key == "n_list") {
        cfg.n_list = parse_n_list(val);
      } else if (key == "trials") {
        cfg.trials = std::stoll(val);
      } else if (key == "seed") {
        cfg.seed = std::stoull(val);
      } else if (key == "schedulers") {
        apply_scheduler_list(cfg, val);
      } else if (key == "occupancy") {
        if (val == "analytic") {
          cfg.occupancy = OccupancyMode::Kind::analytic;
        } else if (val == "queue") {
          cfg.occupancy = OccupancyMode::Kind::queue;
        } else {
          throw std::invalid_argument("occupancy must be analytic or queue");
        }
      } else if (key == "out") {
        cfg.output_path = val;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config:" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void run_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const SystemParams base = cfg.make_params(cfg.n_list.front());

  out << "# crmud capacity sweep\n";
  out << "# pd=" << fmt(cfg.pd) << " pf=" << fmt(cfg.pf) << " lambda=" << fmt(cfg.lambda)
      << " mu_min=" << fmt(cfg.mu_min) << "\n";
  out << "# Pp_dB=" << fmt(cfg.pp_db) << " Pp_linear=" << fmt(base.pp)
      << " Psmax_dB=" << fmt(cfg.psmax_db) << " Psmax_linear=" << fmt(base.ps_max)
      << " R=" << fmt(cfg.rate) << "\n";
  out << "# derived R_p=" << fmt(base.rp) << " K=" << fmt(base.k) << "\n";
  out << "# trials=" << cfg.trials << " seed=" << cfg.seed << " occupancy="
      << (cfg.occupancy == OccupancyMode::Kind::analytic ? "analytic" : "queue")
      << " schedulers=" << (cfg.run_exact ? "exact," : "") << (cfg.run_lower ? "lower," : "")
      << (cfg.run_upper ? "upper" : "") << "\n";
  out << "# empty cf_/kl_/ku_ cells: expression not applicable at that N\n";
  out << "N,mc_exact_mean,mc_exact_se,mc_lower_mean,mc_lower_se,mc_upper_mean,mc_upper_se,"
         "cf_lower,cf_upper,kl_log2lnN,ku_log2lnN,mu_hat,mu_hat_se,busy_fraction\n";

  std::vector<SchedulerKind> kinds;
  int idx_exact = -1, idx_lower = -1, idx_upper = -1;
  if (cfg.run_exact) {
    idx_exact = static_cast<int>(kinds.size());
    kinds.push_back(SchedulerKind::max_snr);
  }
  if (cfg.run_lower) {
    idx_lower = static_cast<int>(kinds.size());
    kinds.push_back(SchedulerKind::two_stage);
  }
  if (cfg.run_upper) {
    idx_upper = static_cast<int>(kinds.size());
    kinds.push_back(SchedulerKind::genie);
  }
  const int idx_mu = idx_exact >= 0 ? idx_exact : 0;
  const SchedulerKind queue_kind = idx_exact >= 0 ? SchedulerKind::max_snr
                                   : idx_lower >= 0 ? SchedulerKind::two_stage
                                                    : SchedulerKind::genie;
  const double kl = asymptotic_k_lower(base);
  const double ku = asymptotic_k_upper(base);

  for (const int n : cfg.n_list) {
    const SystemParams p = base.with_n(n);
    const OccupancyMode occ = cfg.occupancy == OccupancyMode::Kind::analytic
                                  ? OccupancyMode::analytic(p.mu_min)
                                  : OccupancyMode::queue();
    const MultiEstimate est =
        estimate_capacity_multi(p, kinds, occ, cfg.trials, sub_seed(cfg.seed, n, 1));
    const QueueResult qr = simulate_queue(p, queue_kind, cfg.trials, sub_seed(cfg.seed, n, 2));

    auto mc_cols = [&](int idx) {
      if (idx < 0) return std::string(",");
      const CapacityEstimate& e = est.per_scheduler[static_cast<std::size_t>(idx)].total;
      return fmt(e.mean) + "," + fmt(e.std_error);
    };
    const auto cfl = lower_bound_capacity(p, n);
    const auto cfu = upper_bound_capacity(p, n);
    const double log2lnn = n >= 2 ? std::log2(std::log(static_cast<double>(n))) : 0.0;
    const bool asym_ok = n >= 2 && log2lnn > 0.0;
    const CapacityEstimate& mu = est.per_scheduler[static_cast<std::size_t>(idx_mu)].mu_hat;

    out << n << "," << mc_cols(idx_exact) << "," << mc_cols(idx_lower) << ","
        << mc_cols(idx_upper) << "," << (cfl ? fmt(*cfl) : "") << ","
        << (cfu ? fmt(*cfu) : "") << "," << (asym_ok ? fmt(kl * log2lnn) : "") << ","
        << (asym_ok ? fmt(ku * log2lnn) : "") << "," << fmt(mu.mean) << ","
        << fmt(mu.std_error) << "," << fmt(qr.busy_fraction) << "\n";
  }
}

void run_sweep_to_file(const ExperimentConfig& cfg) {
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + cfg.output_path + "'");
  run_sweep(cfg, out);
  out.flush();
  if (!out) throw std::runtime_error("write failure on '" + cfg.output_path + "'");
}

void emit_plot_data(std::istream& csv, std::ostream& out) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(csv, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    header = split(t, ',');
    break;
  }
  if (header.empty()) throw std::runtime_error("plot-data: missing CSV header");
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[trim(header[i])] = i;
  for (const char* required : {"N", "mu_hat", "busy_fraction"}) {
    if (!col.count(required)) {
      throw std::runtime_error(std::string("plot-data: CSV lacks required column ") + required);
    }
  }

  struct Series {
    const char* name;
    const char* value_col;
    const char* se_col;  // nullptr: no confidence interval
  };
  static constexpr Series kSeries[] = {
      {"mc_exact", "mc_exact_mean", "mc_exact_se"},
      {"mc_lower", "mc_lower_mean", "mc_lower_se"},
      {"mc_upper", "mc_upper_mean", "mc_upper_se"},
      {"cf_lower", "cf_lower", nullptr},
      {"cf_upper", "cf_upper", nullptr},
      {"asym_lower", "kl_log2lnN", nullptr},
      {"asym_upper", "ku_log2lnN", nullptr},
      {"mu_hat", "mu_hat", "mu_hat_se"},
      {"busy_fraction", "busy_fraction", nullptr},
  };

  out << "series_name,N,value,ci_half_width\n";
  while (std::getline(csv, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split(t, ',');
    if (cells.size() != header.size()) {
      throw std::runtime_error("plot-data: row has " + std::to_string(cells.size()) +
                               " cells, header has " + std::to_string(header.size()));
    }
    const std::string n = trim(cells[col.at("N")]);
    for (const auto& s : kSeries) {
      const auto it = col.find(s.value_col);
      if (it == col.end()) continue;
      const std::string v = trim(cells[it->second]);
      if (v.empty()) continue;  // not-applicable cell: omit, never zero-fill
      double ci = 0.0;
      if (s.se_col != nullptr) {
        const auto se_it = col.find(s.se_col);
        if (se_it != col.end() && !trim(cells[se_it->second]).empty()) {
          ci = 1.96 * std::stod(cells[se_it->second]);
        }
      }
      out << s.name << "," << n << "," << v << "," << fmt(ci) << "\n";
    }
  }
}

}  // namespace crmud
