#include "hatom/phase_space/shape.hpp"
#include "hatom/errors.hpp"
#include "hatom/numerics/quadrature.hpp"
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace hatom::phase_space {

namespace {
constexpr double pi = std::numbers::pi;
const double unitary_factor = std::pow(2.0 * pi, -1.5);

double unit_fourier(double xi) {
  return xi == 0.0 ? 4.0 * pi * ShapeFunction::c0() * 8.0 / 105.0
                   : 4.0 * pi * ShapeFunction::c0() * bump_sine_moment(xi) / xi;
}

// \int |ghat_unitary| d^3 xi at unit scale
double unit_l1() {
  static const double value = [] {
    constexpr double lambda = 2000.0;
    auto zeros = fourier_zeros(lambda);
    std::vector<double> breaks{0.0};
    for (double z : zeros) {
      const double lo = breaks.back();
      // keep panels no wider than 1 for the oscillating integrand
      const int pieces = std::max(1, static_cast<int>(std::ceil(z - lo)));
      for (int k = 1; k <= pieces; ++k)
        breaks.push_back(lo + (z - lo) * k / pieces);
    }
    breaks.push_back(lambda);
    const double body = quad::gauss_panels(
        [](double x) {
          return 4.0 * pi * x * x * std::abs(unit_fourier(x)) * unitary_factor;
        },
        breaks, 16);
    // |ghat| ~ 32 pi c0 |cos xi| / xi^4 beyond the cut; mean |cos| = 2/pi
    const double tail =
        4.0 * pi * 32.0 * pi * ShapeFunction::c0() * unitary_factor * (2.0 / pi) /
        lambda;
    return body + tail;
  }();
  return value;
}
} // namespace

//==============================================================================
double bump_sine_moment(double xi) {
  const double ax = std::abs(xi);
  if (ax < 3.0) {
    // sin(xi r) series; \int_0^1 r^m (1-r^2)^2 r dr with m = 2n+1
    double sum = 0.0, term = xi; // xi^{2n+1}/(2n+1)!
    for (int n = 0; n < 60; ++n) {
      const double m = 2.0 * n + 1.0;
      const double mom = 1.0 / (m + 2.0) - 2.0 / (m + 4.0) + 1.0 / (m + 6.0);
      const double add = (n % 2 == 0 ? 1.0 : -1.0) * term * mom;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum))
        break;
      term *= xi * xi / ((m + 1.0) * (m + 2.0));
    }
    return sum;
  }
  const double s = std::sin(xi), c = std::cos(xi);
  const double x2 = xi * xi, x3 = x2 * xi;
  return 8.0 * c / x3 - 48.0 * s / (x3 * xi) - 120.0 * c / (x3 * x2) +
         120.0 * s / (x3 * x3);
}

std::vector<double> fourier_zeros(double xi_max) {
  std::vector<double> zeros;
  constexpr double step = 0.05;
  double a = 3.0, fa = bump_sine_moment(a);
  while (a < xi_max) {
    const double b = std::min(a + step, xi_max);
    const double fb = bump_sine_moment(b);
    if (fa == 0.0) {
      zeros.push_back(a);
    } else if (fa * fb < 0.0) {
      std::uintmax_t it = 200;
      const auto r = boost::math::tools::toms748_solve(
          [](double x) { return bump_sine_moment(x); }, a, b, fa, fb,
          boost::math::tools::eps_tolerance<double>(52), it);
      zeros.push_back(0.5 * (r.first + r.second));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

//==============================================================================
ShapeFunction::ShapeFunction(double R) : m_R(R) {
  if (!(R > 0.0) || !std::isfinite(R))
    throw DomainError("ShapeFunction: dilation R must be positive");
}

double ShapeFunction::c0() {
  static const double v = std::sqrt(3465.0 / (512.0 * pi));
  return v;
}

ShapeFunction default_shape() { return ShapeFunction(1.0); }

double ShapeFunction::profile(double r) const {
  const double x = r / m_R;
  if (x >= 1.0)
    return 0.0;
  const double y = 1.0 - x * x;
  return c0() * y * y * std::pow(m_R, -1.5);
}

double ShapeFunction::density(double r) const {
  const double g = profile(r);
  return g * g;
}

double ShapeFunction::norm_sq() const {
  return quad::gauss(
      [this](double r) { return 4.0 * pi * r * r * density(r); }, 0.0, m_R,
      32);
}

double ShapeFunction::grad_norm_sq() const { return 11.0 / (m_R * m_R); }

double ShapeFunction::fourier(double xi) const {
  if (!(xi >= 0.0))
    throw DomainError("ShapeFunction::fourier: xi must be non-negative");
  return std::pow(m_R, 1.5) * unit_fourier(m_R * xi);
}

double ShapeFunction::fourier_unitary(double xi) const {
  return unitary_factor * fourier(xi);
}

double ShapeFunction::fourier_unitary_l1() const {
  return std::pow(m_R, -1.5) * unit_l1();
}

double ShapeFunction::smearing_kernel(double r, double s) const {
  const double R2 = m_R * m_R;
  const double a = r - s, b = r + s;
  const double ya = 1.0 - a * a / R2;
  if (ya <= 0.0)
    return 0.0;
  const double yb = 1.0 - b * b / R2;
  double diff;
  if (yb <= 0.0) {
    diff = ya * ya * ya * ya * ya;
  } else {
    // ya^5 - yb^5 with ya - yb = 4 r s / R^2
    const double d = 4.0 * r * s / R2;
    diff = d * (ya * ya * ya * ya + ya * ya * ya * yb + ya * ya * yb * yb +
                ya * yb * yb * yb + yb * yb * yb * yb);
  }
  return c0() * c0() / (10.0 * m_R) * diff;
}

RadialFunction ShapeFunction::fourier_table(std::size_t nodes) const {
  LogGrid grid(1e-3 / m_R, 1e4 / m_R, nodes);
  std::vector<double> v(nodes);
  for (std::size_t i = 0; i < nodes; ++i)
    v[i] = fourier(grid.r(i));
  return RadialFunction(grid, std::move(v), Tail::zero);
}

} // namespace hatom::phase_space
