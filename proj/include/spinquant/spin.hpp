#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

// Unit convention used throughout: hbar = 1 and omega = e B / m = 1, so
// times are tau = omega * t, energies are eps = E / (hbar * omega), and the
// scattering time enters only as tau_c = omega * t_c.  The field strength B,
// the charge e and the mass m never appear on their own.

namespace spinquant {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Wrap an angle into [0, 2*pi).
inline double wrap_two_pi(double phi) {
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

/// A point on the Bloch sphere plus the coherence clock: the dimensionless
/// time elapsed since the walker last scattered inelastically.
struct SpinDirection {
  double theta = 0.0;              // polar angle in [0, pi]
  double phi = 0.0;                // azimuth, kept reduced modulo 2*pi
  double tau_since_scatter = 0.0;  // coherence clock, >= 0

  bool operator==(const SpinDirection&) const = default;
};

/// Two-component amplitude of the spin state in the |+> / |-> basis of s_z.
struct Spinor {
  std::complex<double> c_plus;
  std::complex<double> c_minus;

  double norm_squared() const { return std::norm(c_plus) + std::norm(c_minus); }
};

inline void validate_direction(const SpinDirection& dir) {
  if (!(dir.theta >= 0.0 && dir.theta <= pi))
    throw std::domain_error("SpinDirection: theta outside [0, pi]");
  if (!(dir.tau_since_scatter >= 0.0))
    throw std::domain_error("SpinDirection: negative coherence clock");
}

/// |theta,phi> = cos(theta/2) e^{-i phi/2} |+>  +  sin(theta/2) e^{+i phi/2} |->
inline Spinor make_spinor(const SpinDirection& dir) {
  validate_direction(dir);
  const double half = 0.5 * dir.theta;
  const std::complex<double> phase(0.0, 0.5 * dir.phi);
  return Spinor{std::cos(half) * std::exp(-phase), std::sin(half) * std::exp(phase)};
}

/// Precession about the field axis: phi advances at unit rate, theta is
/// unchanged, and the coherence clock accumulates the elapsed time.
inline SpinDirection precess(const SpinDirection& dir, double dtau) {
  assert(dtau >= 0.0);
  return SpinDirection{dir.theta, wrap_two_pi(dir.phi + dtau),
                       dir.tau_since_scatter + dtau};
}

/// eps_theta = <theta,phi|H|theta,phi> = cos(theta) / 2 in units of hbar*omega.
inline double energy(double theta) {
  if (!(theta >= 0.0 && theta <= pi))
    throw std::domain_error("energy: theta outside [0, pi]");
  return 0.5 * std::cos(theta);
}

/// Off-diagonal element of the pure-state projector |theta,phi><theta,phi|:
/// (1/2) sin(theta) e^{-i phi}.
inline std::complex<double> coherence_term(const SpinDirection& dir) {
  validate_direction(dir);
  return 0.5 * std::sin(dir.theta) *
         std::exp(std::complex<double>(0.0, -dir.phi));
}

}  // namespace spinquant
