#include "spinquant/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinquant/engine.hpp"
#include "spinquant/rates.hpp"
#include "spinquant/stats.hpp"
#include "spinquant/version.hpp"

namespace spinquant {

double RunConfig::tau_c() const { return two_pi * tau_c_over_period; }

double RunConfig::horizon_tau() const { return tau_end * tau_c(); }

double RunConfig::table_tau_max() const {
  // 4 * tau_c by default; stretched when the horizon runs past it so the
  // no-scattering sentinel stays a tail case
  return std::max(4.0, tau_end) * tau_c();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) fail(line, key + ": trailing characters in '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, key + ": expected a number, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, int line, const std::string& key) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    fail(line, key + ": expected a nonnegative integer, got '" + v + "'");
  return x;
}

std::vector<double> parse_double_list(const std::string& v, int line,
                                      const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, key + ": empty list element");
    out.push_back(parse_double(item, line, key));
  }
  if (out.empty()) fail(line, key + ": empty list");
  return out;
}

}  // namespace

RunConfig validate_config(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "missing key");
    if (value.empty()) fail(line, key + ": missing value");

    if (key == "tau_c_over_period") {
      cfg.tau_c_over_period = parse_double(value, line, key);
      if (!(cfg.tau_c_over_period > 0.0)) fail(line, "tau_c_over_period must be > 0");
    } else if (key == "n_paths") {
      if (!value.empty() && value[0] == '-') fail(line, "n_paths must be positive");
      cfg.n_paths = parse_u64(value, line, key);
      if (cfg.n_paths == 0) fail(line, "n_paths must be positive");
    } else if (key == "tau_end") {
      cfg.tau_end = parse_double(value, line, key);
      if (!(cfg.tau_end > 0.0)) fail(line, "tau_end must be > 0");
    } else if (key == "snapshot_times") {
      cfg.snapshot_times = parse_double_list(value, line, key);
    } else if (key == "n_theta_bins") {
      const double x = parse_double(value, line, key);
      if (!(x >= 1.0) || x != std::floor(x)) fail(line, "n_theta_bins must be a positive integer");
      cfg.n_theta_bins = static_cast<int>(x);
    } else if (key == "n_theta_grid") {
      cfg.n_theta_grid = static_cast<std::size_t>(parse_u64(value, line, key));
      if (cfg.n_theta_grid < 2) fail(line, "n_theta_grid must be >= 2");
    } else if (key == "n_tau_grid") {
      cfg.n_tau_grid = static_cast<std::size_t>(parse_u64(value, line, key));
      if (cfg.n_tau_grid < 2) fail(line, "n_tau_grid must be >= 2");
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value, line, key);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_u64(value, line, key));
    } else if (key == "tau_c_sweep") {
      cfg.tau_c_sweep = parse_double_list(value, line, key);
      for (double v : cfg.tau_c_sweep)
        if (!(v > 0.0)) fail(line, "tau_c_sweep values must be > 0");
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  for (double t : cfg.snapshot_times)
    if (t < 0.0 || t > cfg.tau_end)
      throw ConfigError("config: snapshot_times must lie within [0, tau_end]");
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str());
}

void write_dos_curves_csv(const std::vector<double>& taus,
                          std::size_t n_theta_points, std::ostream& out) {
  out << "tau,theta,rho\n";
  char buf[100];
  const double h = pi / static_cast<double>(n_theta_points - 1);
  for (double tau : taus) {
    for (std::size_t k = 0; k < n_theta_points; ++k) {
      const double theta =
          (k + 1 == n_theta_points) ? pi : static_cast<double>(k) * h;
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", tau, theta,
                    dos_rho_bar(theta, tau));
      out << buf;
    }
  }
}

namespace {

std::string format_tc(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p,
                       std::vector<std::string>& artifacts) {
  std::ofstream out(p, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot open output file: " + p.string());
  artifacts.push_back(p.filename().string());
  return out;
}

}  // namespace

RunManifest run_experiment(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);

  RunManifest manifest;

  const double tau_c = config.tau_c();
  const RateTable table = build_rate_table(tau_c, config.n_theta_grid,
                                           config.n_tau_grid,
                                           config.table_tau_max());
  const double horizon = config.horizon_tau();
  const std::vector<Path> paths =
      run_paths(config.n_paths, horizon, table, config.master_seed,
                config.threads);

  {
    auto out = open_out(dir / "dos_curves.csv", manifest.artifacts);
    std::vector<double> taus;
    for (int k = 1; k <= 10; ++k) taus.push_back(static_cast<double>(k) * pi);
    write_dos_curves_csv(taus, 513, out);
  }
  {
    auto out = open_out(dir / "sample_paths.csv", manifest.artifacts);
    write_paths_csv(paths, 8, out);
  }

  std::vector<double> snap_taus;
  for (double t : config.snapshot_times) snap_taus.push_back(t * tau_c);

  EnsembleSnapshot first_snap, last_snap;
  for (std::size_t k = 0; k < snap_taus.size(); ++k) {
    const EnsembleSnapshot snap =
        snapshot(paths, snap_taus[k], config.n_theta_bins);
    auto out = open_out(dir / ("hist_" + format_tc(config.snapshot_times[k]) + "tc.csv"),
                        manifest.artifacts);
    write_histogram_csv(snap, out);
    if (k == 0) first_snap = snap;
    if (k + 1 == snap_taus.size()) last_snap = snap;
  }
  const auto series = coherence_series(paths, snap_taus);
  {
    auto out = open_out(dir / "coherence.csv", manifest.artifacts);
    write_coherence_csv(series, tau_c, out);
  }

  for (const Path& p : paths) manifest.n_events_total += p.events.size();
  manifest.mean_events_per_path =
      static_cast<double>(manifest.n_events_total) /
      static_cast<double>(config.n_paths);
  manifest.final_coherence_mag =
      series.empty() ? 0.0 : series.back().coherence_mag;
  manifest.final_mixedness = mixedness_check(last_snap);
  manifest.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::json j;
  j["version"] = version_string;
  j["config"] = {
      {"tau_c_over_period", config.tau_c_over_period},
      {"n_paths", config.n_paths},
      {"tau_end", config.tau_end},
      {"snapshot_times", config.snapshot_times},
      {"n_theta_bins", config.n_theta_bins},
      {"n_theta_grid", config.n_theta_grid},
      {"n_tau_grid", config.n_tau_grid},
      {"master_seed", config.master_seed},
      {"output_dir", config.output_dir},
      {"threads", config.threads},
  };
  j["derived"] = {
      {"tau_c", tau_c},
      {"horizon_tau", horizon},
      {"table_tau_max", config.table_tau_max()},
  };
  j["summary"] = {
      {"n_events_total", manifest.n_events_total},
      {"mean_events_per_path", manifest.mean_events_per_path},
      {"initial_coherence_mag",
       series.empty() ? 0.0 : series.front().coherence_mag},
      {"final_coherence_mag", manifest.final_coherence_mag},
      {"initial_mixedness", mixedness_check(first_snap)},
      {"final_mixedness", manifest.final_mixedness},
      {"wall_time_seconds", manifest.wall_time_seconds},
  };
  j["artifacts"] = manifest.artifacts;
  {
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open manifest.json");
    out << j.dump(2) << "\n";
    manifest.artifacts.push_back("manifest.json");
  }
  return manifest;
}

std::vector<RunManifest> run_sweep(const RunConfig& config) {
  std::vector<RunManifest> manifests;
  if (config.tau_c_sweep.empty()) {
    manifests.push_back(run_experiment(config));
    return manifests;
  }
  for (double value : config.tau_c_sweep) {
    RunConfig sub = config;
    sub.tau_c_over_period = value;
    sub.tau_c_sweep.clear();
    sub.output_dir = (std::filesystem::path(config.output_dir) /
                      ("tc_" + format_tc(value)))
                         .string();
    manifests.push_back(run_experiment(sub));
  }
  return manifests;
}

}  // namespace spinquant
