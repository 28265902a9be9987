#pragma once

#include "hatom/errors.hpp"
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <span>
#include <vector>

namespace hatom::quad {

//! Gauss-Legendre rule on [-1, 1] with the full (symmetric) node set.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

//! Cached rules; n in {8, 16, 24, 32, 48, 64}.
const GaussRule &gauss_legendre(int n);

//! Fixed Gauss-Legendre sum of f over [a, b].
template <class F> double gauss(F &&f, double a, double b, int n = 32) {
  const auto &rule = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

//! Gauss-Legendre over consecutive panels [b_0,b_1], [b_1,b_2], ...
template <class F>
double gauss_panels(F &&f, std::span<const double> breaks, int n = 32) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i])
      s += gauss(f, breaks[i], breaks[i + 1], n);
  return s;
}

//! Adaptive 31-point Gauss-Kronrod on a finite interval.
template <class F>
double adaptive(F &&f, double a, double b, double rel_tol = 1e-11,
                unsigned max_depth = 18) {
  if (!(b > a))
    return 0.0;
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, max_depth, rel_tol, &err);
  if (!std::isfinite(v))
    throw NumericalError("adaptive quadrature produced a non-finite value");
  return v;
}

//! Double-exponential rule for integrable endpoint singularities.
template <class F>
double endpoint_singular(F &&f, double a, double b, double rel_tol = 1e-11) {
  if (!(b > a))
    return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double v = rule.integrate(f, a, b, rel_tol, &err, &l1, &levels);
  if (!std::isfinite(v))
    throw NumericalError("tanh-sinh quadrature produced a non-finite value");
  return v;
}

//! Double-exponential rule on [a, inf).
template <class F> double to_infinity(F &&f, double a, double rel_tol = 1e-11) {
  static thread_local boost::math::quadrature::exp_sinh<double> rule(12);
  double err = 0.0, l1 = 0.0;
  const double v = rule.integrate([&](double t) { return f(a + t); }, rel_tol,
                                  &err, &l1);
  if (!std::isfinite(v))
    throw NumericalError("exp-sinh quadrature produced a non-finite value");
  return v;
}

} // namespace hatom::quad
