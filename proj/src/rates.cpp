#include "spinquant/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace spinquant {

double broadened_delta(double eps, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("broadened_delta: tau must be > 0");
  const double x = 0.5 * eps * tau;
  if (std::abs(x) < 1e-6) return tau / two_pi * (1.0 - x * x / 3.0);
  const double s = std::sin(x) / x;
  return tau / two_pi * s * s;
}

double dos_rho_bar(double theta, double tau) {
  const double eps_theta = energy(theta);  // validates theta
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return c * c * broadened_delta(eps_theta - 0.5, tau) +
         s * s * broadened_delta(eps_theta + 0.5, tau);
}

double transition_dos(double theta_from, double theta_to, double tau) {
  const double eps_to = energy(theta_to);
  if (!(theta_from >= 0.0 && theta_from <= pi))
    throw std::domain_error("transition_dos: theta_from outside [0, pi]");
  const double b_plus = std::cos(0.5 * theta_from) * std::cos(0.5 * theta_to);
  const double b_minus = std::sin(0.5 * theta_from) * std::sin(0.5 * theta_to);
  return b_plus * b_plus * broadened_delta(eps_to - 0.5, tau) +
         b_minus * b_minus * broadened_delta(eps_to + 0.5, tau);
}

double differential_rate(double theta_from, double theta_to, double tau,
                         double tau_c) {
  if (!(tau_c > 0.0)) throw std::domain_error("differential_rate: tau_c must be > 0");
  return transition_dos(theta_from, theta_to, tau) / tau_c;
}

namespace {

// The delta peak of width 2*pi/tau must span at least 8 cells of the energy
// grid; the coarsest energy spacing of a uniform theta grid is h/2 at the
// equator.
void check_resolution(double tau, std::size_t n_theta) {
  if (n_theta < 2) throw NumericalError("rate quadrature: need at least 2 grid points");
  const double h = pi / static_cast<double>(n_theta - 1);
  if (two_pi / tau < 8.0 * 0.5 * h)
    throw NumericalError(
        "rate quadrature: theta grid too coarse to resolve the broadened "
        "delta at tau=" + std::to_string(tau));
}

}  // namespace

double total_rate(double theta_from, double tau, double tau_c,
                  std::size_t n_theta) {
  if (!(tau > 0.0)) throw std::domain_error("total_rate: tau must be > 0");
  if (!(tau_c > 0.0)) throw std::domain_error("total_rate: tau_c must be > 0");
  check_resolution(tau, n_theta);
  const double h = pi / static_cast<double>(n_theta - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < n_theta; ++k) {
    const double theta = (k + 1 == n_theta) ? pi : static_cast<double>(k) * h;
    const double w = (k == 0 || k + 1 == n_theta) ? 0.5 : 1.0;
    sum += w * std::sin(theta) * transition_dos(theta_from, theta, tau);
  }
  return two_pi / tau_c * h * sum;
}

RateTable build_rate_table(double tau_c, std::size_t n_theta,
                           std::size_t n_tau, double tau_max) {
  if (!(tau_c > 0.0)) throw std::domain_error("build_rate_table: tau_c must be > 0");
  if (n_theta < 2 || n_tau < 2)
    throw std::domain_error("build_rate_table: grids need at least 2 points");
  if (tau_max == 0.0) tau_max = 4.0 * tau_c;
  if (!(tau_max > 0.0)) throw std::domain_error("build_rate_table: tau_max must be > 0");
  check_resolution(tau_max, n_theta);

  RateTable t;
  t.tau_c = tau_c;
  t.theta_grid.resize(n_theta);
  t.tau_grid.resize(n_tau);
  t.sin_theta.resize(n_theta);
  t.cos_half_sq.resize(n_theta);
  t.sin_half_sq.resize(n_theta);
  t.eps.resize(n_theta);

  const double h = pi / static_cast<double>(n_theta - 1);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = (i + 1 == n_theta) ? pi : static_cast<double>(i) * h;
    t.theta_grid[i] = theta;
    t.sin_theta[i] = std::sin(theta);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    t.cos_half_sq[i] = c * c;
    t.sin_half_sq[i] = s * s;
    t.eps[i] = 0.5 * std::cos(theta);
  }
  const double dtau = tau_max / static_cast<double>(n_tau - 1);
  for (std::size_t j = 0; j < n_tau; ++j)
    t.tau_grid[j] = (j + 1 == n_tau) ? tau_max : static_cast<double>(j) * dtau;

  // W(theta,tau) = (2pi/tau_c) [cos^2(theta/2) I+(tau) + sin^2(theta/2) I-(tau)]
  // with I± the trapezoid masses of the two spectral channels
  //   I+(tau) = Int sin(th') cos^2(th'/2) delta_tau(eps' - 1/2) dth'
  //   I-(tau) = Int sin(th') sin^2(th'/2) delta_tau(eps' + 1/2) dth',
  // so one quadrature pass per tau row fills the whole theta column.
  std::vector<double> i_plus(n_tau, 0.0), i_minus(n_tau, 0.0);
  for (std::size_t j = 1; j < n_tau; ++j) {
    const double tau = t.tau_grid[j];
    double sp = 0.0, sm = 0.0;
    for (std::size_t k = 0; k < n_theta; ++k) {
      const double w = (k == 0 || k + 1 == n_theta) ? 0.5 : 1.0;
      const double base = w * t.sin_theta[k];
      sp += base * t.cos_half_sq[k] * broadened_delta(t.eps[k] - 0.5, tau);
      sm += base * t.sin_half_sq[k] * broadened_delta(t.eps[k] + 0.5, tau);
    }
    i_plus[j] = h * sp;
    i_minus[j] = h * sm;
  }

  t.total_rate.resize(n_theta * n_tau);
  t.cumulative_rate.resize(n_theta * n_tau);
  for (std::size_t i = 0; i < n_theta; ++i) {
    double* rate_row = &t.total_rate[i * n_tau];
    double* cum_row = &t.cumulative_rate[i * n_tau];
    const double cp = t.cos_half_sq[i];
    const double sm = t.sin_half_sq[i];
    rate_row[0] = 0.0;  // delta_tau -> 0 as tau -> 0
    cum_row[0] = 0.0;
    for (std::size_t j = 1; j < n_tau; ++j) {
      rate_row[j] = two_pi / tau_c * (cp * i_plus[j] + sm * i_minus[j]);
      cum_row[j] = cum_row[j - 1] + 0.5 * dtau * (rate_row[j - 1] + rate_row[j]);
    }
  }
  return t;
}

namespace {

struct GridPos {
  std::size_t lo;
  double frac;
};

GridPos locate(const std::vector<double>& grid, double x, const char* what) {
  if (!(x >= grid.front() && x <= grid.back()))
    throw NumericalError(std::string("RateTable: ") + what + " outside tabulated range");
  const double step = grid[1] - grid[0];
  std::size_t lo = static_cast<std::size_t>((x - grid.front()) / step);
  if (lo >= grid.size() - 1) lo = grid.size() - 2;
  double frac = (x - grid[lo]) / step;
  frac = std::clamp(frac, 0.0, 1.0);
  return {lo, frac};
}

}  // namespace

double RateTable::rate_at(double theta, double tau) const {
  const GridPos it = locate(theta_grid, theta, "theta");
  const GridPos jt = locate(tau_grid, tau, "tau");
  const std::size_t n = n_tau();
  auto row = [&](std::size_t i) {
    const double* r = &total_rate[i * n];
    return (1.0 - jt.frac) * r[jt.lo] + jt.frac * r[jt.lo + 1];
  };
  return (1.0 - it.frac) * row(it.lo) + it.frac * row(it.lo + 1);
}

double RateTable::cumulative_at(double theta, double tau) const {
  const GridPos it = locate(theta_grid, theta, "theta");
  const GridPos jt = locate(tau_grid, tau, "tau");
  const std::size_t n = n_tau();
  auto row = [&](std::size_t i) {
    const double* r = &cumulative_rate[i * n];
    return (1.0 - jt.frac) * r[jt.lo] + jt.frac * r[jt.lo + 1];
  };
  return (1.0 - it.frac) * row(it.lo) + it.frac * row(it.lo + 1);
}

void write_rate_table_csv(const RateTable& table, std::ostream& out) {
  out << "theta,tau,total_rate,cumulative_rate\n";
  char buf[160];
  const std::size_t n = table.n_tau();
  for (std::size_t i = 0; i < table.n_theta(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n",
                    table.theta_grid[i], table.tau_grid[j],
                    table.total_rate[i * n + j], table.cumulative_rate[i * n + j]);
      out << buf;
    }
  }
}

}  // namespace spinquant
