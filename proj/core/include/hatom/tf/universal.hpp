#pragma once

#include "hatom/numerics/radial.hpp"
#include <cstddef>
#include <span>
#include <vector>

namespace hatom::tf {

//! Node layout of the dimensionless screening-function table.
struct UniversalGridSpec {
  double x_min{1e-8};
  double x_max{1e5};
  std::size_t nodes{4000};
};

//! The dimensionless Thomas-Fermi screening function phi(x):
//!   phi'' = phi^{3/2} / sqrt(x),  phi(0) = 1,  phi(inf) = 0.
//!
//! phi and phi' are stored on a log grid; between nodes both are evaluated by
//! cubic Hermite interpolation (phi' using phi'' from the ODE). Below the first
//! node the small-x series is used, beyond the last node the 144/x^3 tail.
class TFUniversalSolution {
public:
  TFUniversalSolution() = default;
  //! Validates phi(x_min) ~ 1, phi strictly decreasing and positive.
  TFUniversalSolution(LogGrid grid, std::vector<double> phi,
                      std::vector<double> dphi, double slope0,
                      double slope0_check, double tolerance);

  const LogGrid &grid() const { return m_grid; }
  std::span<const double> phi() const { return m_phi; }
  std::span<const double> dphi() const { return m_dphi; }
  //! phi'(0) from the shooting solve.
  double slope0() const { return m_slope0; }
  //! phi'(0) from the independent inward collocation integration.
  double slope0_check() const { return m_slope0_check; }
  double tolerance() const { return m_tolerance; }

  double phi_at(double x) const;
  double dphi_at(double x) const;
  //! phi'' = phi^{3/2}/sqrt(x).
  double d2phi_at(double x) const;

  //! Largest |phi''(x_i) - phi(x_i)^{3/2}/sqrt(x_i)| relative to |phi''|,
  //! with phi'' estimated by centred differences of the tabulated phi'.
  double ode_residual() const;

private:
  std::size_t locate(double x, double &theta, double &h) const;

  LogGrid m_grid{};
  std::vector<double> m_phi{};
  std::vector<double> m_dphi{};
  double m_slope0{0.0};
  double m_slope0_check{0.0};
  double m_tolerance{0.0};
};

//! Shooting solve on phi'(0) with adaptive Dormand-Prince integration in
//! t = sqrt(x), followed by outward re-shooting to cover the whole grid.
//! Cross-checks phi'(0) against `collocation_slope0` and throws
//! NumericalError if they differ by more than 10 * tolerance.
//! tolerance must lie in (1e-12, 1e-3).
TFUniversalSolution solve_universal_tf(double tolerance = 1e-10,
                                       const UniversalGridSpec &spec = {});

//! phi'(0) from fixed-step two-stage Gauss collocation integrated inward from
//! the far-field expansion, normalized by the scale invariance
//! psi(x) = a^3 phi(a x) of the equation.
double collocation_slope0(double tolerance);

} // namespace hatom::tf
