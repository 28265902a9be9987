#pragma once

#include "hatom/numerics/radial.hpp"
#include <cstddef>
#include <vector>

namespace hatom::phase_space {

//! The localization profile g(x) = c0 (1 - |x|^2)^2 on the unit ball and its
//! dilation g_R(x) = R^{-3/2} g(x/R).
//!
//! `fourier` uses the non-unitary radial transform
//!   ghat(xi) = (4 pi / xi) \int_0^R r sin(xi r) g_R(r) dr,
//! so ghat(0) = \int g_R. `fourier_unitary` carries the extra (2 pi)^{-3/2}.
class ShapeFunction {
public:
  explicit ShapeFunction(double R = 1.0);

  double R() const { return m_R; }
  ShapeFunction dilated(double R) const { return ShapeFunction(R); }

  //! Normalization of the unit-scale profile, c0^2 = 3465 / (512 pi).
  static double c0();

  double profile(double r) const;
  //! g_R(r)^2.
  double density(double r) const;
  //! \int g_R^2 by quadrature.
  double norm_sq() const;
  //! ||grad g_R||^2 = 11 / R^2 (closed form).
  double grad_norm_sq() const;

  double fourier(double xi) const;
  double fourier_unitary(double xi) const;
  //! \int |ghat_unitary(xi)| d^3 xi.
  double fourier_unitary_l1() const;

  //! H_R(r, s) = \int_{|r-s|}^{r+s} t g_R(t)^2 dt, the bipolar weight for
  //! convolving a radial density with g_R^2.
  double smearing_kernel(double r, double s) const;

  //! ghat tabulated on a log grid xi in [1e-3, 1e4] / R (no tail; values may
  //! change sign so spline interpolation is linear in the value).
  RadialFunction fourier_table(std::size_t nodes = 2048) const;

private:
  double m_R;
};

//! The quartic bump at unit scale.
ShapeFunction default_shape();

//! Sign changes of the unit-scale ghat on (0, xi_max], ascending.
std::vector<double> fourier_zeros(double xi_max);

//! Unit-scale radial transform factor I(xi) = \int_0^1 r (1-r^2)^2 sin(xi r) dr.
double bump_sine_moment(double xi);

} // namespace hatom::phase_space
