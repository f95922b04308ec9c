#include "spinquant/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace spinquant {

EnsembleSnapshot snapshot(std::span<const Path> paths, double tau_lab,
                          int n_bins) {
  if (n_bins < 1) throw std::domain_error("snapshot: n_bins must be positive");
  EnsembleSnapshot snap;
  snap.tau_lab = tau_lab;
  snap.n_paths = paths.size();
  snap.theta_histogram.assign(static_cast<std::size_t>(n_bins), 0);

  const double inv_width = static_cast<double>(n_bins) / pi;
  for (const Path& p : paths) {
    const SpinDirection d = direction_at(p, tau_lab);  // validates horizon
    auto bin = static_cast<std::size_t>(d.theta * inv_width);
    bin = std::min(bin, static_cast<std::size_t>(n_bins - 1));
    ++snap.theta_histogram[bin];

    const double ch = std::cos(0.5 * d.theta);
    const double sh = std::sin(0.5 * d.theta);
    const double half_sin = 0.5 * std::sin(d.theta);
    snap.rho11 += ch * ch;
    snap.rho22 += sh * sh;
    snap.rho12 += half_sin * std::exp(std::complex<double>(0.0, -d.phi));
    snap.coherence_mag += half_sin;
  }
  if (!paths.empty()) {
    const double inv_n = 1.0 / static_cast<double>(paths.size());
    snap.rho11 *= inv_n;
    snap.rho22 *= inv_n;
    snap.rho12 *= inv_n;
    snap.coherence_mag *= inv_n;
  }
  return snap;
}

std::vector<CoherencePoint> coherence_series(std::span<const Path> paths,
                                             std::span<const double> times) {
  std::vector<CoherencePoint> series;
  series.reserve(times.size());
  for (double t : times) {
    CoherencePoint pt;
    pt.tau_lab = t;
    for (const Path& p : paths) {
      const SpinDirection d = direction_at(p, t);
      const double half_sin = 0.5 * std::sin(d.theta);
      pt.coherence_mag += half_sin;
      pt.complex_avg += half_sin * std::exp(std::complex<double>(0.0, -d.phi));
    }
    if (!paths.empty()) {
      const double inv_n = 1.0 / static_cast<double>(paths.size());
      pt.coherence_mag *= inv_n;
      pt.complex_avg *= inv_n;
    }
    series.push_back(pt);
  }
  return series;
}

double mixedness_check(const EnsembleSnapshot& snap) {
  return std::max({std::abs(snap.rho11 - 0.5), std::abs(snap.rho22 - 0.5),
                   std::abs(snap.rho12)});
}

void write_histogram_csv(const EnsembleSnapshot& snap, std::ostream& out) {
  out << "bin_center,count,normalized_density\n";
  char buf[120];
  const std::size_t n = snap.theta_histogram.size();
  const double width = pi / static_cast<double>(n);
  const double norm =
      snap.n_paths > 0 ? 1.0 / (static_cast<double>(snap.n_paths) * width) : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double center = (static_cast<double>(k) + 0.5) * width;
    const double count = static_cast<double>(snap.theta_histogram[k]);
    std::snprintf(buf, sizeof buf, "%.12g,%llu,%.12g\n", center,
                  static_cast<unsigned long long>(snap.theta_histogram[k]),
                  count * norm);
    out << buf;
  }
}

void write_coherence_csv(std::span<const CoherencePoint> series, double tau_c,
                         std::ostream& out) {
  out << "tau_over_tc,coherence_mag,complex_avg_re,complex_avg_im\n";
  char buf[160];
  for (const CoherencePoint& pt : series) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n",
                  pt.tau_lab / tau_c, pt.coherence_mag, pt.complex_avg.real(),
                  pt.complex_avg.imag());
    out << buf;
  }
}

}  // namespace spinquant
