#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "spinquant/spin.hpp"

namespace spinquant {

/// Raised when a grid is too coarse to resolve the broadened delta kernel or
/// a lookup falls outside the tabulated domain.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite-lifetime broadening kernel
///   delta_tau(eps) = sin^2(eps*tau/2) / (pi * eps^2 * tau / 2),
/// a unit-area even function of eps that tends to the Dirac delta as
/// tau -> infinity.  Below |eps*tau/2| = 1e-6 the quadratic Taylor expansion
/// (tau/2pi)(1 - x^2/3) replaces the 0/0 form.
double broadened_delta(double eps, double tau);

/// Time-dependent density of states of a precessing spin,
///   rho_bar(theta,tau) = cos^2(theta/2) delta_tau(eps_theta - 1/2)
///                      + sin^2(theta/2) delta_tau(eps_theta + 1/2),
/// normalized by hbar*omega.
double dos_rho_bar(double theta, double tau);

/// Transition density of states between spin directions: the same two
/// spectral channels weighted by B+ = cos(theta/2)cos(theta'/2) and
/// B- = sin(theta/2)sin(theta'/2).  Independent of both azimuths.
double transition_dos(double theta_from, double theta_to, double tau);

/// Differential scattering rate (per unit solid-angle measure, units of
/// omega): transition_dos / tau_c.  The azimuthal integral is flat and is
/// applied in total_rate.
double differential_rate(double theta_from, double theta_to, double tau,
                         double tau_c);

/// Total out-scattering rate, units of omega:
///   W(theta,tau) = (2 pi / tau_c) * Int_0^pi sin(theta') rho(theta',tau) dtheta'
/// evaluated by composite trapezoid on a uniform theta' grid of n_theta
/// points.  Throws NumericalError when the delta peak (width 2 pi / tau)
/// would span fewer than 8 grid cells of the energy grid.
double total_rate(double theta_from, double tau, double tau_c,
                  std::size_t n_theta = 2048);

/// Precomputed total rate W(theta, tau) and its running time integral
/// Lambda(theta, tau) on a uniform (theta, tau) grid.  Built once, then
/// immutable; concurrent readers need no synchronization.
struct RateTable {
  double tau_c = 0.0;
  std::vector<double> theta_grid;  // n_theta points on [0, pi]
  std::vector<double> tau_grid;    // n_tau points on [0, tau_max]
  std::vector<double> total_rate;       // row-major [i_theta * n_tau + j_tau]
  std::vector<double> cumulative_rate;  // same layout, trapezoid in tau

  // per-theta-grid constants reused by the samplers
  std::vector<double> sin_theta;
  std::vector<double> cos_half_sq;
  std::vector<double> sin_half_sq;
  std::vector<double> eps;  // cos(theta)/2

  std::size_t n_theta() const { return theta_grid.size(); }
  std::size_t n_tau() const { return tau_grid.size(); }
  double tau_max() const { return tau_grid.back(); }

  double rate_at(double theta, double tau) const;
  double cumulative_at(double theta, double tau) const;
};

/// Tabulate total_rate on the grid and integrate it in tau (trapezoid).
/// tau_max defaults to 4*tau_c when passed as 0.
RateTable build_rate_table(double tau_c, std::size_t n_theta = 2048,
                           std::size_t n_tau = 4096, double tau_max = 0.0);

/// Debug/plot dump, columns: theta,tau,total_rate,cumulative_rate.
void write_rate_table_csv(const RateTable& table, std::ostream& out);

}  // namespace spinquant
