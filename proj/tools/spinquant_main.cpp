// spinquant: batch front end for the spin quantization Monte Carlo.
//
//   spinquant run   --config sim.cfg [--threads N] [--seed S] [--out DIR]
//   spinquant dos   --tau-list pi,2pi,...,10pi [--theta-points N] [--out FILE]
//   spinquant table [--tau-c-over-period X] [--n-theta N] [--n-tau M] --out FILE
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinquant/rates.hpp"
#include "spinquant/run.hpp"
#include "spinquant/version.hpp"

namespace {

// Accept plain numbers or multiples of pi: "3.14", "pi", "2pi", "0.5pi",
// with the glyph form as an alias for the suffix.
double parse_tau_token(const std::string& token) {
  std::string s = token;
  for (auto pos = s.find("π"); pos != std::string::npos;
       pos = s.find("π"))
    s.replace(pos, 2, "pi");
  double factor = 1.0;
  const auto pos = s.find("pi");
  if (pos != std::string::npos) {
    if (pos + 2 != s.size())
      throw spinquant::ConfigError("bad tau token '" + token + "'");
    factor = spinquant::pi;
    s = s.substr(0, pos);
    if (s.empty()) return factor;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v * factor;
  } catch (const std::exception&) {
    throw spinquant::ConfigError("bad tau token '" + token + "'");
  }
}

std::vector<double> parse_tau_list(const std::string& list) {
  std::vector<double> taus;
  std::string item;
  std::stringstream ss(list);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const double tau = parse_tau_token(item);
    if (!(tau > 0.0))
      throw spinquant::ConfigError("tau values must be > 0, got '" + item + "'");
    taus.push_back(tau);
  }
  if (taus.empty()) throw spinquant::ConfigError("empty --tau-list");
  return taus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulation of spin reorientation toward the field-axis eigendirections"};
  app.set_version_flag("--version", spinquant::version_string);
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a batch experiment");
  run_cmd->footer(
      "Config file keys and defaults:\n"
      "  tau_c_over_period = 20     t_c / (2 pi / omega)\n"
      "  n_paths = 100000           ensemble size\n"
      "  tau_end = 2                horizon in units of t_c\n"
      "  snapshot_times = 0,0.2,0.6,1,2   units of t_c\n"
      "  n_theta_bins = 50          histogram bins\n"
      "  n_theta_grid = 2048        rate-table theta points\n"
      "  n_tau_grid = 4096          rate-table tau points\n"
      "  master_seed = 12345        64-bit RNG seed\n"
      "  output_dir = out           artifact directory\n"
      "  threads = 0                0 = all hardware threads\n"
      "  tau_c_sweep =              optional list; one run per value");
  std::string config_file;
  std::string out_dir;
  std::string seed_str;
  int threads = -1;
  run_cmd->add_option("--config", config_file, "Flat key = value config file (defaults apply when omitted)");
  run_cmd->add_option("--threads", threads, "Worker threads (0 = all cores); never affects results");
  run_cmd->add_option("--seed", seed_str, "Master seed override");
  run_cmd->add_option("--out", out_dir, "Output directory override");

  auto* dos_cmd = app.add_subcommand("dos", "Emit density-of-states curves only");
  std::string tau_list = "pi,2pi,3pi,4pi,5pi,6pi,7pi,8pi,9pi,10pi";
  std::size_t theta_points = 513;
  std::string dos_out = "dos_curves.csv";
  dos_cmd->add_option("--tau-list", tau_list, "Comma list of times, e.g. pi,2pi,10pi or 3.14");
  dos_cmd->add_option("--theta-points", theta_points, "Points of the theta grid")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  dos_cmd->add_option("--out", dos_out, "Output CSV file");

  auto* table_cmd = app.add_subcommand("table", "Dump a rate table as CSV");
  double tc_over_period = 20.0;
  std::size_t n_theta = 256, n_tau = 512;
  double tau_max_over_tc = 4.0;
  std::string table_out = "rate_table.csv";
  table_cmd->add_option("--tau-c-over-period", tc_over_period, "t_c / (2 pi / omega)")->check(CLI::PositiveNumber);
  table_cmd->add_option("--n-theta", n_theta, "theta grid points");
  table_cmd->add_option("--n-tau", n_tau, "tau grid points");
  table_cmd->add_option("--tau-max-over-tau-c", tau_max_over_tc, "table horizon in units of tau_c")->check(CLI::PositiveNumber);
  table_cmd->add_option("--out", table_out, "Output CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run_cmd)) {
      spinquant::RunConfig cfg;
      if (!config_file.empty()) cfg = spinquant::load_config_file(config_file);
      if (threads >= 0) cfg.threads = static_cast<unsigned>(threads);
      if (!seed_str.empty()) {
        try {
          cfg.master_seed = std::stoull(seed_str);
        } catch (const std::exception&) {
          throw spinquant::ConfigError("--seed: expected an integer, got '" + seed_str + "'");
        }
      }
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      const auto manifests = spinquant::run_sweep(cfg);
      for (const auto& m : manifests) {
        std::printf("run complete: %llu events over %.3f s; artifacts in %s\n",
                    static_cast<unsigned long long>(m.n_events_total),
                    m.wall_time_seconds, cfg.output_dir.c_str());
      }
    } else if (app.got_subcommand(dos_cmd)) {
      const auto taus = parse_tau_list(tau_list);
      std::ofstream out(dos_out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + dos_out);
      spinquant::write_dos_curves_csv(taus, theta_points, out);
      std::printf("wrote %s (%zu curves)\n", dos_out.c_str(), taus.size());
    } else if (app.got_subcommand(table_cmd)) {
      const double tau_c = spinquant::two_pi * tc_over_period;
      const auto table = spinquant::build_rate_table(tau_c, n_theta, n_tau,
                                                     tau_max_over_tc * tau_c);
      std::ofstream out(table_out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + table_out);
      spinquant::write_rate_table_csv(table, out);
      std::printf("wrote %s (%zu x %zu)\n", table_out.c_str(), table.n_theta(),
                  table.n_tau());
    }
  } catch (const spinquant::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
