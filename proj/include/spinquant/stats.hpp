#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "spinquant/engine.hpp"

namespace spinquant {

/// Ensemble reduction at one lab time: theta histogram, averaged 2x2 density
/// matrix and the per-spin coherence magnitude (1/N) sum (1/2) sin(theta_j).
struct EnsembleSnapshot {
  double tau_lab = 0.0;
  std::vector<std::uint64_t> theta_histogram;  // uniform bins on [0, pi]
  std::size_t n_paths = 0;
  double rho11 = 0.0;                      // <cos^2(theta/2)>
  double rho22 = 0.0;                      // <sin^2(theta/2)>
  std::complex<double> rho12;              // <(1/2) sin(theta) e^{-i phi}>
  double coherence_mag = 0.0;              // <(1/2) sin(theta)>

  std::complex<double> rho21() const { return std::conj(rho12); }
  double trace() const { return rho11 + rho22; }
};

struct CoherencePoint {
  double tau_lab = 0.0;
  double coherence_mag = 0.0;            // phase-free per-spin magnitude
  std::complex<double> complex_avg;      // phi-resolved ensemble average
};

/// Bin theta(tau_lab) over the ensemble and average the pure-state
/// projectors.  Reduction order is fixed (path index), so the result is
/// independent of how the paths were produced.
EnsembleSnapshot snapshot(std::span<const Path> paths, double tau_lab,
                          int n_bins);

/// Coherence decay curve over a set of snapshot times.
std::vector<CoherencePoint> coherence_series(std::span<const Path> paths,
                                             std::span<const double> times);

/// Max-norm distance of the averaged density matrix from diag(1/2, 1/2),
/// the fully mixed ensemble.
double mixedness_check(const EnsembleSnapshot& snap);

/// Histogram dump, columns: bin_center,count,normalized_density.
void write_histogram_csv(const EnsembleSnapshot& snap, std::ostream& out);

/// Coherence series dump, columns:
/// tau_over_tc,coherence_mag,complex_avg_re,complex_avg_im.
void write_coherence_csv(std::span<const CoherencePoint> series, double tau_c,
                         std::ostream& out);

}  // namespace spinquant
