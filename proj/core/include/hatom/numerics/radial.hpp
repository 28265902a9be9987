#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hatom {

//==============================================================================
//! Logarithmic radial grid r_i = r_min * exp(i*h), i = 0..n-1.
class LogGrid {
public:
  LogGrid() = default;
  LogGrid(double r_min, double r_max, std::size_t n);

  std::size_t size() const { return m_r.size(); }
  double r(std::size_t i) const { return m_r[i]; }
  double r_min() const { return m_r.front(); }
  double r_max() const { return m_r.back(); }
  //! Step in ln r.
  double step() const { return m_h; }
  std::span<const double> radii() const { return m_r; }

  //! Same node count and step, every radius multiplied by `factor`.
  LogGrid scaled(double factor) const;

  //! Fractional index of r (may lie outside [0, n-1]).
  double index_of(double r) const;

  bool same_as(const LogGrid &other) const;

private:
  double m_h{0.0};
  std::vector<double> m_r{};
};

//==============================================================================
//! How a radial function behaves beyond the last node.
enum class Tail {
  power_law, //!< continue with the local power law of the last two nodes
  zero       //!< identically zero beyond r_max (compact support)
};

//! A spherically symmetric function tabulated on a LogGrid.
//!
//! Interpolation is a natural cubic spline in u = ln r, applied to ln f when
//! every node value is positive and to f otherwise. Below r_min the function is
//! continued with the local power law of the first two nodes.
class RadialFunction {
public:
  RadialFunction() = default;
  RadialFunction(LogGrid grid, std::vector<double> values,
                 Tail tail = Tail::power_law);

  const LogGrid &grid() const { return m_grid; }
  std::span<const double> values() const { return m_f; }
  double value(std::size_t i) const { return m_f[i]; }
  std::size_t size() const { return m_f.size(); }
  Tail tail() const { return m_tail; }

  double operator()(double r) const;

  //! \int f(r) 4 pi r^2 dr over [0, inf), with analytic head/tail pieces.
  double integrate() const;

  //! \int f(r) r^k 4 pi r^2 dr.
  double integrate_weighted(double k) const;

  //! Q(r_i) = \int_0^{r_i} f 4 pi r^2 dr at every node.
  std::vector<double> cumulative_mass() const;

  //! Local power-law exponents at the first and last interval.
  double head_exponent() const;
  double tail_exponent() const;

private:
  LogGrid m_grid{};
  std::vector<double> m_f{};
  Tail m_tail{Tail::power_law};
  bool m_log_interp{false};
  std::vector<double> m_y{};   // spline ordinates (f or ln f)
  std::vector<double> m_ypp{}; // spline second derivatives in u
};

//==============================================================================
// Quadrature on uniform-in-u samples; used by RadialFunction and by modules
// that integrate derived quantities on the same grid.

//! Composite Simpson (with a 3/8 panel when the interval count is odd).
double simpson_uniform(std::span<const double> g, double h);

//! Running integral of g(u) from u_0 to every node (4th order).
std::vector<double> cumulative_uniform(std::span<const double> g, double h);

//! \int_0^{r0} 4 pi r^2 f dr assuming f = f0 (r/r0)^p, p > -3.
double power_law_head(double f0, double r0, double p, double k_extra = 0.0);

//! \int_{rN}^inf 4 pi r^2 f dr assuming f = fN (r/rN)^p, p < -3.
double power_law_tail(double fN, double rN, double p, double k_extra = 0.0);

} // namespace hatom
