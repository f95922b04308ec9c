#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinquant {

/// Configuration file or CLI error; carries the offending line when known.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One batch experiment.  Times are expressed the way the figures are
/// labelled: tau_c_over_period is t_c / (2 pi / omega), horizons and
/// snapshot times are in units of t_c.
struct RunConfig {
  double tau_c_over_period = 20.0;
  std::uint64_t n_paths = 100000;
  double tau_end = 2.0;  // units of t_c
  std::vector<double> snapshot_times = {0.0, 0.2, 0.6, 1.0, 2.0};  // units of t_c
  int n_theta_bins = 50;
  std::size_t n_theta_grid = 2048;
  std::size_t n_tau_grid = 4096;
  std::uint64_t master_seed = 12345;
  std::string output_dir = "out";
  unsigned threads = 0;  // 0 = all hardware threads
  std::vector<double> tau_c_sweep;  // optional: sweep of tau_c_over_period

  double tau_c() const;       // dimensionless scattering time omega * t_c
  double horizon_tau() const; // tau_end in dimensionless time
  double table_tau_max() const;
};

/// Parse a flat "key = value" config text.  Unknown keys, malformed values
/// and invariant violations raise ConfigError with the line number.
RunConfig validate_config(const std::string& text);

/// validate_config over the contents of a file.
RunConfig load_config_file(const std::filesystem::path& file);

/// Summary returned by run_experiment, echoed into manifest.json.
struct RunManifest {
  std::uint64_t n_events_total = 0;
  double mean_events_per_path = 0.0;
  double final_coherence_mag = 0.0;
  double final_mixedness = 0.0;
  double wall_time_seconds = 0.0;
  std::vector<std::string> artifacts;
};

/// Build the rate table, simulate the ensemble and emit the run artifacts:
/// dos_curves.csv, sample_paths.csv, one hist_<time>.csv per snapshot,
/// coherence.csv and manifest.json.
RunManifest run_experiment(const RunConfig& config);

/// Sequential sweep over config.tau_c_sweep into per-value subdirectories
/// (tc_<value>/).  Falls back to a single run when the sweep list is empty.
std::vector<RunManifest> run_sweep(const RunConfig& config);

/// Density-of-states curves rho_bar(theta, tau) for each listed tau over a
/// uniform theta grid.  Columns: tau,theta,rho.
void write_dos_curves_csv(const std::vector<double>& taus,
                          std::size_t n_theta_points, std::ostream& out);

}  // namespace spinquant
