#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spinquant/rates.hpp"
#include "spinquant/rng.hpp"
#include "spinquant/spin.hpp"

namespace spinquant {

/// One inelastic scattering event along a path.
struct PathEvent {
  double tau_lab = 0.0;      // absolute lab time of the event
  SpinDirection dir_before;  // state just before scattering
  SpinDirection dir_after;   // state just after; coherence clock reset to 0
};

/// A full walker history: free precession segments separated by scattering
/// events.  theta is piecewise constant between events and phi advances at
/// unit rate, so the state at any lab time is reconstructable.
struct Path {
  SpinDirection initial;
  std::vector<PathEvent> events;
  double tau_end = 0.0;
};

/// Step (i): theta uniform on [0, pi], phi uniform on [0, 2 pi), clock zero.
SpinDirection sample_initial(RngStream& rng);

/// Step (ii): draw the free-flight time from -log r = Lambda(theta, tau_f),
/// inverted against the tabulated cumulative rate (bisection plus linear
/// interpolation within the bracketing cell).  Returns nullopt when the
/// target exceeds Lambda(theta, tau_max): no scattering within the horizon.
std::optional<double> sample_flight_time(const SpinDirection& dir,
                                         const RateTable& table, RngStream& rng);

/// Deterministic core of sample_flight_time, exposed for tests: solve
/// Lambda(theta, tau) = neg_log_r on the table.
std::optional<double> invert_flight_target(const RateTable& table, double theta,
                                           double neg_log_r);

/// Step (iii): sample the post-scattering direction.  theta' follows the
/// weight sin(theta') * transition_dos(theta_from, theta', tau_f) via
/// inverse-CDF on the table's theta grid (trapezoid CDF, bisection plus
/// linear interpolation); phi' is uniform, the weight being azimuth-free.
/// If the integrated weight underflows (all transitions forbidden) the spin
/// keeps its direction: a null event.  The returned clock is always 0.
SpinDirection sample_final_direction(const SpinDirection& dir_from, double tau_f,
                                     const RateTable& table, RngStream& rng);

/// Steps (i)-(iv): alternate free precession and scattering until tau_end.
/// The initial direction must carry a zero coherence clock.
Path simulate_path(const SpinDirection& initial, double tau_end,
                   const RateTable& table, RngStream& rng);

/// Same, sampling the initial direction from the uniform ensemble.
Path simulate_path(double tau_end, const RateTable& table, RngStream& rng);

/// Reconstruct the direction at an arbitrary lab time in [0, tau_end].
/// Right-continuous at event times: returns the post-scattering state.
SpinDirection direction_at(const Path& path, double tau_lab);

/// Simulate n_paths independent paths with per-path Philox streams.
/// Results are indexed by path and do not depend on the thread count.
std::vector<Path> run_paths(std::size_t n_paths, double tau_end,
                            const RateTable& table, std::uint64_t master_seed,
                            unsigned n_threads = 0);

/// Event log dump, columns:
/// path_index,event_index,tau_lab,theta_before,theta_after,phi_after.
void write_paths_csv(std::span<const Path> paths, std::size_t max_paths,
                     std::ostream& out);

}  // namespace spinquant
