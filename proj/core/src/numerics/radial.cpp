#include "hatom/numerics/radial.hpp"
#include "hatom/errors.hpp"
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hatom {

namespace {
constexpr double four_pi = 4.0 * std::numbers::pi;

// Natural cubic spline second derivatives for uniform spacing h.
std::vector<double> spline_second_derivatives(std::span<const double> y,
                                              double h) {
  const auto n = y.size();
  std::vector<double> ypp(n, 0.0);
  if (n < 3)
    return ypp;
  // Thomas algorithm on the interior system.
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double rhs = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
    const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
    c[i] = 1.0 / denom;
    d[i] = (rhs - (i > 1 ? d[i - 1] : 0.0)) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    ypp[i] = d[i] - c[i] * ypp[i + 1];
    if (i == 1)
      break;
  }
  return ypp;
}
} // namespace

//==============================================================================
LogGrid::LogGrid(double r_min, double r_max, std::size_t n) {
  if (!(r_min > 0.0) || !(r_max > r_min) || n < 4)
    throw DomainError("LogGrid: need 0 < r_min < r_max and n >= 4");
  m_h = std::log(r_max / r_min) / static_cast<double>(n - 1);
  m_r.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    m_r[i] = r_min * std::exp(m_h * static_cast<double>(i));
  m_r.back() = r_max;
}

LogGrid LogGrid::scaled(double factor) const {
  LogGrid g{*this};
  for (auto &r : g.m_r)
    r *= factor;
  return g;
}

double LogGrid::index_of(double r) const {
  return std::log(r / m_r.front()) / m_h;
}

bool LogGrid::same_as(const LogGrid &other) const {
  if (size() != other.size())
    return false;
  const auto tol = 1e-12;
  return std::abs(r_min() / other.r_min() - 1.0) < tol &&
         std::abs(r_max() / other.r_max() - 1.0) < tol;
}

//==============================================================================
RadialFunction::RadialFunction(LogGrid grid, std::vector<double> values,
                               Tail tail)
    : m_grid(std::move(grid)), m_f(std::move(values)), m_tail(tail) {
  if (m_f.size() != m_grid.size())
    throw DomainError("RadialFunction: value count does not match grid");
  m_log_interp = std::all_of(m_f.begin(), m_f.end(),
                             [](double v) { return v > 0.0; });
  m_y.resize(m_f.size());
  for (std::size_t i = 0; i < m_f.size(); ++i)
    m_y[i] = m_log_interp ? std::log(m_f[i]) : m_f[i];
  m_ypp = spline_second_derivatives(m_y, m_grid.step());
}

double RadialFunction::head_exponent() const {
  if (!(m_f[0] > 0.0) || !(m_f[1] > 0.0))
    return 0.0;
  return std::log(m_f[1] / m_f[0]) / m_grid.step();
}

double RadialFunction::tail_exponent() const {
  const auto n = m_f.size();
  if (!(m_f[n - 1] > 0.0) || !(m_f[n - 2] > 0.0))
    return 0.0;
  return std::log(m_f[n - 1] / m_f[n - 2]) / m_grid.step();
}

double RadialFunction::operator()(double r) const {
  const auto n = m_f.size();
  if (r <= m_grid.r_min()) {
    if (r <= 0.0)
      r = std::numeric_limits<double>::min();
    const double p = head_exponent();
    return p == 0.0 ? m_f[0] : m_f[0] * std::pow(r / m_grid.r_min(), p);
  }
  if (r >= m_grid.r_max()) {
    if (m_tail == Tail::zero)
      return r == m_grid.r_max() ? m_f[n - 1] : 0.0;
    const double p = tail_exponent();
    return p == 0.0 ? m_f[n - 1] : m_f[n - 1] * std::pow(r / m_grid.r_max(), p);
  }
  const double s = m_grid.index_of(r);
  auto i = static_cast<std::size_t>(s);
  if (i >= n - 1)
    i = n - 2;
  const double h = m_grid.step();
  const double b = s - static_cast<double>(i);
  const double a = 1.0 - b;
  const double y = a * m_y[i] + b * m_y[i + 1] +
                   ((a * a * a - a) * m_ypp[i] + (b * b * b - b) * m_ypp[i + 1]) *
                       (h * h) / 6.0;
  return m_log_interp ? std::exp(y) : y;
}

double RadialFunction::integrate() const { return integrate_weighted(0.0); }

double RadialFunction::integrate_weighted(double k) const {
  const auto n = m_f.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = m_grid.r(i);
    g[i] = four_pi * std::pow(r, 3.0 + k) * m_f[i];
  }
  double total = simpson_uniform(g, m_grid.step());
  total += power_law_head(m_f[0], m_grid.r_min(), head_exponent(), k);
  if (m_tail == Tail::power_law)
    total += power_law_tail(m_f[n - 1], m_grid.r_max(), tail_exponent(), k);
  return total;
}

std::vector<double> RadialFunction::cumulative_mass() const {
  const auto n = m_f.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = four_pi * std::pow(m_grid.r(i), 3) * m_f[i];
  auto q = cumulative_uniform(g, m_grid.step());
  const double head =
      power_law_head(m_f[0], m_grid.r_min(), head_exponent(), 0.0);
  for (auto &v : q)
    v += head;
  return q;
}

//==============================================================================
double simpson_uniform(std::span<const double> g, double h) {
  const auto n = g.size();
  if (n < 2)
    return 0.0;
  if (n == 2)
    return 0.5 * h * (g[0] + g[1]);
  std::size_t intervals = n - 1;
  double sum = 0.0;
  std::size_t end = n - 1;
  if (intervals % 2 == 1) {
    // Simpson 3/8 on the last three intervals.
    sum += 3.0 * h / 8.0 *
           (g[n - 4] + 3.0 * g[n - 3] + 3.0 * g[n - 2] + g[n - 1]);
    end = n - 4;
  }
  double s = g[0] + g[end];
  for (std::size_t i = 1; i < end; ++i)
    s += (i % 2 == 1 ? 4.0 : 2.0) * g[i];
  sum += s * h / 3.0;
  return sum;
}

std::vector<double> cumulative_uniform(std::span<const double> g, double h) {
  const auto n = g.size();
  std::vector<double> c(n, 0.0);
  if (n < 4) {
    for (std::size_t i = 1; i < n; ++i)
      c[i] = c[i - 1] + 0.5 * h * (g[i - 1] + g[i]);
    return c;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double piece;
    if (i == 0) {
      // one-sided cubic through nodes 0..3
      piece = h / 24.0 * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]);
    } else if (i + 2 >= n) {
      piece = h / 24.0 *
              (9.0 * g[i + 1] + 19.0 * g[i] - 5.0 * g[i - 1] + g[i - 2]);
    } else {
      piece = h / 24.0 * (-g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2]);
    }
    c[i + 1] = c[i] + piece;
  }
  return c;
}

double power_law_head(double f0, double r0, double p, double k_extra) {
  if (f0 == 0.0)
    return 0.0;
  const double e = 3.0 + k_extra + p;
  if (!(e > 0.0))
    throw NumericalError("radial integral diverges at the origin");
  return four_pi * f0 * std::pow(r0, 3.0 + k_extra) / e;
}

double power_law_tail(double fN, double rN, double p, double k_extra) {
  if (fN == 0.0)
    return 0.0;
  const double e = -(3.0 + k_extra + p);
  if (!(e > 0.0))
    throw NumericalError("radial integral diverges at infinity");
  return four_pi * fN * std::pow(rN, 3.0 + k_extra) / e;
}

} // namespace hatom
