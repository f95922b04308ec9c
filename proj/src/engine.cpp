#include "spinquant/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace spinquant {

SpinDirection sample_initial(RngStream& rng) {
  const double theta = pi * rng.uniform01();
  const double phi = two_pi * rng.uniform01();
  return SpinDirection{theta, phi, 0.0};
}

std::optional<double> invert_flight_target(const RateTable& table, double theta,
                                           double neg_log_r) {
  const auto& grid = table.theta_grid;
  if (!(theta >= grid.front() && theta <= grid.back()))
    throw NumericalError("sample_flight_time: theta outside tabulated range");
  const double step = grid[1] - grid[0];
  std::size_t i = static_cast<std::size_t>((theta - grid.front()) / step);
  if (i >= grid.size() - 1) i = grid.size() - 2;
  const double w = std::clamp((theta - grid[i]) / step, 0.0, 1.0);

  const std::size_t n = table.n_tau();
  const double* lo = &table.cumulative_rate[i * n];
  const double* hi = &table.cumulative_rate[(i + 1) * n];
  auto lambda = [&](std::size_t j) { return (1.0 - w) * lo[j] + w * hi[j]; };

  if (neg_log_r > lambda(n - 1)) return std::nullopt;  // survives the horizon

  // smallest j with Lambda(j) >= target
  std::size_t left = 0, right = n - 1;
  while (left + 1 < right) {
    const std::size_t mid = (left + right) / 2;
    if (lambda(mid) >= neg_log_r)
      right = mid;
    else
      left = mid;
  }
  const double l0 = lambda(left), l1 = lambda(right);
  const double dtau = table.tau_grid[right] - table.tau_grid[left];
  const double frac = (l1 > l0) ? (neg_log_r - l0) / (l1 - l0) : 0.0;
  return table.tau_grid[left] + std::clamp(frac, 0.0, 1.0) * dtau;
}

std::optional<double> sample_flight_time(const SpinDirection& dir,
                                         const RateTable& table, RngStream& rng) {
  const double r = rng.uniform_open01();
  return invert_flight_target(table, dir.theta, -std::log(r));
}

SpinDirection sample_final_direction(const SpinDirection& dir_from, double tau_f,
                                     const RateTable& table, RngStream& rng) {
  if (!(tau_f > 0.0))
    throw std::domain_error("sample_final_direction: tau_f must be > 0");
  const std::size_t n = table.n_theta();
  const double cp = std::cos(0.5 * dir_from.theta);
  const double sp = std::sin(0.5 * dir_from.theta);
  const double wp = cp * cp;  // B+^2 carries cos^2(theta'/2) from the grid
  const double wm = sp * sp;

  // weight g(theta') = sin(theta') transition_dos(theta, theta', tau_f) on
  // the grid; both spectral channels through one sincos per point:
  // sin(a -+ b) with a = eps' tau_f/2, b = tau_f/4
  static thread_local std::vector<double> cdf;
  cdf.resize(n);
  const double half_tau = 0.5 * tau_f;
  const double b = 0.25 * tau_f;
  const double sb = std::sin(b), cb = std::cos(b);
  const double peak = tau_f / two_pi;
  auto channel = [&](double sx, double x) {
    if (std::abs(x) < 1e-6) return peak * (1.0 - x * x / 3.0);
    const double q = sx / x;
    return peak * q * q;
  };
  double prev_g = 0.0;
  double cum = 0.0;
  const double h = table.theta_grid[1] - table.theta_grid[0];
  for (std::size_t k = 0; k < n; ++k) {
    const double a = table.eps[k] * half_tau;
    const double sa = std::sin(a), ca = std::cos(a);
    const double dplus = channel(sa * cb - ca * sb, a - b);   // eps' - 1/2
    const double dminus = channel(sa * cb + ca * sb, a + b);  // eps' + 1/2
    const double g = table.sin_theta[k] *
                     (wp * table.cos_half_sq[k] * dplus +
                      wm * table.sin_half_sq[k] * dminus);
    if (k > 0) cum += 0.5 * h * (prev_g + g);
    cdf[k] = cum;
    prev_g = g;
  }
  const double total = cdf[n - 1];
  if (!(total > 0.0) || !std::isfinite(total))
    return SpinDirection{dir_from.theta, dir_from.phi, 0.0};  // null event

  const double target = rng.uniform01() * total;
  std::size_t left = 0, right = n - 1;
  while (left + 1 < right) {
    const std::size_t mid = (left + right) / 2;
    if (cdf[mid] >= target)
      right = mid;
    else
      left = mid;
  }
  const double c0 = cdf[left], c1 = cdf[right];
  const double frac = (c1 > c0) ? (target - c0) / (c1 - c0) : 0.0;
  const double theta =
      table.theta_grid[left] + std::clamp(frac, 0.0, 1.0) * h;
  const double phi = two_pi * rng.uniform01();
  return SpinDirection{std::clamp(theta, 0.0, pi), phi, 0.0};
}

Path simulate_path(const SpinDirection& initial, double tau_end,
                   const RateTable& table, RngStream& rng) {
  validate_direction(initial);
  if (initial.tau_since_scatter != 0.0)
    throw std::domain_error("simulate_path: initial coherence clock must be 0");
  if (!(tau_end > 0.0)) throw std::domain_error("simulate_path: tau_end must be > 0");

  Path path{initial, {}, tau_end};
  SpinDirection cur = initial;
  double tau_lab = 0.0;
  for (;;) {
    const auto flight = sample_flight_time(cur, table, rng);
    if (!flight || tau_lab + *flight >= tau_end) break;
    const SpinDirection before = precess(cur, *flight);
    const SpinDirection after =
        sample_final_direction(before, before.tau_since_scatter, table, rng);
    tau_lab += *flight;
    path.events.push_back(PathEvent{tau_lab, before, after});
    cur = after;
  }
  return path;
}

Path simulate_path(double tau_end, const RateTable& table, RngStream& rng) {
  return simulate_path(sample_initial(rng), tau_end, table, rng);
}

SpinDirection direction_at(const Path& path, double tau_lab) {
  if (!(tau_lab >= 0.0 && tau_lab <= path.tau_end))
    throw std::domain_error("direction_at: tau_lab outside [0, tau_end]");
  const auto it = std::upper_bound(
      path.events.begin(), path.events.end(), tau_lab,
      [](double t, const PathEvent& e) { return t < e.tau_lab; });
  if (it == path.events.begin()) return precess(path.initial, tau_lab);
  const PathEvent& seg = *(it - 1);
  return precess(seg.dir_after, tau_lab - seg.tau_lab);
}

std::vector<Path> run_paths(std::size_t n_paths, double tau_end,
                            const RateTable& table, std::uint64_t master_seed,
                            unsigned n_threads) {
  std::vector<Path> paths(n_paths);
  if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, std::max<std::size_t>(n_paths, 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_paths) return;
      RngStream rng{master_seed, i, 0};
      paths[i] = simulate_path(tau_end, table, rng);
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return paths;
}

void write_paths_csv(std::span<const Path> paths, std::size_t max_paths,
                     std::ostream& out) {
  out << "path_index,event_index,tau_lab,theta_before,theta_after,phi_after\n";
  char buf[200];
  const std::size_t n = std::min(max_paths, paths.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < paths[i].events.size(); ++k) {
      const PathEvent& e = paths[i].events[k];
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.12g,%.12g,%.12g,%.12g\n", i, k,
                    e.tau_lab, e.dir_before.theta, e.dir_after.theta,
                    e.dir_after.phi);
      out << buf;
    }
  }
}

}  // namespace spinquant
