#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace stat {

inline double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

inline double sample_std(const std::vector<double>& xs) {
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

/// Two-sided Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::abs(F - lo), std::abs(hi - F)});
  }
  return d;
}

/// Asymptotic KS critical value; c(0.05) = 1.35810, c(0.01) = 1.62762.
inline double ks_critical(std::size_t n, double alpha) {
  const double c = (alpha <= 0.01) ? 1.62762 : 1.35810;
  return c / std::sqrt(static_cast<double>(n));
}

/// Chi-squared upper quantile via the Wilson-Hilferty cube approximation
/// (relative error below ~1e-3 for df >= 10).
inline double chi2_critical(int df, double alpha) {
  const double z = (alpha <= 0.01) ? 2.326347874 : 1.644853627;
  const double d = static_cast<double>(df);
  const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
  return d * t * t * t;
}

/// Pearson chi-squared against expected bin counts.
inline double chi2_statistic(const std::vector<std::size_t>& counts,
                             const std::vector<double>& expected) {
  double chi2 = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double diff = static_cast<double>(counts[k]) - expected[k];
    chi2 += diff * diff / expected[k];
  }
  return chi2;
}

}  // namespace stat
