#pragma once

// Test-only oracle quadrature, independent of the trapezoid kernels used by
// the library: adaptive Gauss-Kronrod 7-15 with an explicit interval stack.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

// node, G7 weight, K15 weight (symmetric halves)
inline constexpr double gk_nodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double g7 = gk_nodes[0][1] * f0;
  double k15 = gk_nodes[0][2] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * gk_nodes[i][0];
    const double fs = f(mid + dx) + f(mid - dx);
    g7 += gk_nodes[i][1] * fs;
    k15 += gk_nodes[i][2] * fs;
  }
  g7 *= half;
  k15 *= half;
  err = std::pow(200.0 * std::abs(g7 - k15), 1.5);
  return k15;
}

template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 1e-14, int max_intervals = 20000) {
  struct Iv {
    double a, b;
  };
  std::vector<Iv> stack{{a, b}};
  stack.reserve(256);
  double sum = 0.0;
  int used = 0;
  while (!stack.empty()) {
    const Iv iv = stack.back();
    stack.pop_back();
    double err = 0.0;
    const double s = gk15(f, iv.a, iv.b, err);
    if (err < rel_tol * std::abs(s) || err < abs_tol ||
        iv.b - iv.a < 1e-14 * (std::abs(iv.a) + 1.0)) {
      sum += s;
      continue;
    }
    if (++used > max_intervals)
      throw std::runtime_error("oracle::integrate: interval budget exhausted");
    const double mid = 0.5 * (iv.a + iv.b);
    stack.push_back({iv.a, mid});
    stack.push_back({mid, iv.b});
  }
  return sum;
}

// Adaptive integration split at caller-supplied breakpoints (e.g. the zeros
// of an oscillatory kernel).
template <class F>
double integrate_panels(const F& f, const std::vector<double>& breaks,
                        double rel_tol = 1e-10) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
    sum += integrate(f, breaks[k], breaks[k + 1], rel_tol);
  return sum;
}

// Composite Simpson on a dense uniform grid; a second independent route for
// cross-checking smooth densities.
template <class F>
double simpson(const F& f, double a, double b, std::size_t n_intervals) {
  if (n_intervals % 2 != 0) ++n_intervals;
  const double h = (b - a) / static_cast<double>(n_intervals);
  double sum = f(a) + f(b);
  for (std::size_t k = 1; k < n_intervals; ++k)
    sum += f(a + static_cast<double>(k) * h) * ((k % 2) ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace oracle
