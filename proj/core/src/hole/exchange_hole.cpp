#include "hatom/hole/exchange_hole.hpp"
#include "hatom/errors.hpp"
#include "hatom/numerics/parallel.hpp"
#include "hatom/numerics/quadrature.hpp"
#include "hatom/phase_space/shape.hpp"
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace hatom::hole {

namespace {
constexpr double pi = std::numbers::pi;

// \int_0^inf sigma(r) weight(r) dr with weight supported on [0, s + R] and
// kinked at |s - R|, s, R - s; GL32 in v = sqrt(r) on geometric sub-panels.
template <class W>
double bipolar(const RadialFunction &sigma, double s, double R, W &&weight) {
  std::vector<double> cuts{0.0, std::abs(s - R), s, s + R};
  if (R > s)
    cuts.push_back(R - s);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> v;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = std::sqrt(cuts[k]), b = std::sqrt(cuts[k + 1]);
    if (!(b > a))
      continue;
    if (a == 0.0) {
      for (int j = 8; j >= 1; --j)
        v.push_back(b * std::pow(0.25, j));
    } else {
      const int pieces =
          std::clamp(static_cast<int>(std::ceil(std::log(b / a) / std::log(4.0))),
                     1, 8);
      for (int j = 0; j < pieces; ++j)
        v.push_back(a * std::pow(b / a, static_cast<double>(j) / pieces));
    }
  }
  v.insert(v.begin(), 0.0);
  v.push_back(std::sqrt(cuts.back()));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  const double total = quad::gauss_panels(
      [&](double x) {
        const double r = x * x;
        if (!(r > 0.0))
          return 0.0;
        const double w = weight(r);
        return w == 0.0 ? 0.0 : 2.0 * x * w * sigma(r);
      },
      v, 32);
  if (!std::isfinite(total))
    throw NumericalError("bipolar quadrature produced a non-finite value");
  return total;
}

void check_args(double s, double R) {
  if (!(s >= 0.0) || !(R >= 0.0) || !std::isfinite(s) || !std::isfinite(R))
    throw DomainError("ball integrals: need s >= 0 and R >= 0");
}

std::vector<double> log_nodes(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

// Golden-section maximization of f on ln s over the neighbours of node i.
template <class F>
std::pair<double, double> refine_max(F &&f, const std::vector<double> &x,
                                     const std::vector<double> &y,
                                     std::size_t i) {
  const double lo = std::log(x[i == 0 ? 0 : i - 1]);
  const double hi = std::log(x[std::min(i + 1, x.size() - 1)]);
  const auto r = boost::math::tools::brent_find_minima(
      [&](double u) { return -f(std::exp(u)); }, lo, hi, 30);
  if (-r.second > y[i])
    return {std::exp(r.first), -r.second};
  return {x[i], y[i]};
}
} // namespace

double ball_mass(const RadialFunction &sigma, double s, double R) {
  check_args(s, R);
  if (R == 0.0)
    return 0.0;
  return bipolar(sigma, s, R, [&](double r) {
    if (r + s <= R)
      return 4.0 * pi * r * r;
    const double d = r - s;
    if (std::abs(d) < R)
      return pi * r / s * (R * R - d * d);
    return 0.0;
  });
}

double ball_potential(const RadialFunction &sigma, double s, double R) {
  check_args(s, R);
  if (R == 0.0)
    return 0.0;
  return bipolar(sigma, s, R, [&](double r) {
    if (r + s <= R)
      return r >= s ? 4.0 * pi * r : 4.0 * pi * r * r / s;
    const double d = std::abs(r - s);
    if (d < R)
      return 2.0 * pi * r / s * (R - d);
    return 0.0;
  });
}

double hole_radius(const RadialFunction &sigma, double s) {
  check_args(s, 0.0);
  auto f = [&](double u) { return ball_mass(sigma, s, std::exp(u)) - 0.5; };
  const double local = std::max(sigma(std::max(s, sigma.grid().r_min())),
                                std::numeric_limits<double>::min());
  double guess = std::cbrt(3.0 / (8.0 * pi * local));
  if (!std::isfinite(guess) || guess <= 0.0)
    guess = sigma.grid().r_max();
  double lo = std::log(guess), hi = lo;
  double flo = f(lo), fhi = flo;
  for (int k = 0; flo > 0.0; ++k) {
    if (k > 200)
      throw NumericalError("hole_radius: no lower bracket");
    hi = lo;
    fhi = flo;
    lo -= std::log(2.0);
    flo = f(lo);
  }
  for (int k = 0; fhi < 0.0; ++k) {
    if (k > 200)
      throw DomainError("hole_radius: density carries less than 1/2 mass");
    lo = hi;
    flo = fhi;
    hi += std::log(2.0);
    fhi = f(hi);
  }
  if (flo == 0.0)
    return std::exp(lo);
  if (fhi == 0.0)
    return std::exp(hi);
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(40), it);
  return std::exp(0.5 * (r.first + r.second));
}

double hole_potential(const RadialFunction &sigma, double s) {
  return ball_potential(sigma, s, hole_radius(sigma, s));
}

HoleProfile hole_profile(const RadialFunction &sigma,
                         const std::vector<double> &centers, unsigned jobs) {
  HoleProfile p;
  p.centers = centers;
  p.R_hole.resize(centers.size());
  p.L.resize(centers.size());
  parallel_for(centers.size(), jobs, [&](std::size_t i) {
    p.R_hole[i] = hole_radius(sigma, centers[i]);
    p.L[i] = ball_potential(sigma, centers[i], p.R_hole[i]);
  });
  return p;
}

//==============================================================================
double f_function(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw DomainError("f_function: t must be positive");
  const double X = 1.0 / t;
  // B = (1 + X)^{3/2} - 1 - \int_0^X sqrt|1 - r| dr * 3/2
  double B;
  if (X < 1e-2) {
    const double X2 = X * X;
    B = X2 * (0.75 + X2 * (3.0 / 64.0 + X2 * 7.0 / 512.0));
  } else if (X <= 1.0) {
    B = std::pow(1.0 + X, 1.5) + std::pow(1.0 - X, 1.5) - 2.0;
  } else {
    const double a = std::pow(1.0 + X, 1.5), b = std::pow(X - 1.0, 1.5);
    B = (6.0 * X * X + 2.0) / (a + b) - 2.0;
  }
  return 4.0 * pi * std::sqrt(t) * (2.0 / 3.0) * B;
}

double f_sup() {
  static const double value = [] {
    const auto t = log_nodes(1e-4, 1e4, 257);
    std::vector<double> f(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      f[i] = f_function(t[i]);
    const auto i = static_cast<std::size_t>(
        std::max_element(f.begin(), f.end()) - f.begin());
    return refine_max(f_function, t, f, i).second;
  }();
  return value;
}

double f_limit() { return 8.0 * pi; }

A1A2 a1_a2_decomposition(const tf::TFAtom &atom, double s) {
  const auto &rho = atom.rho();
  const double R = hole_radius(rho, s);
  const double L = ball_potential(rho, s, R);
  const double r1 = 1.0 / atom.Z();
  const double A1 = ball_potential(rho, s, r1);
  const double A2 = R > r1 ? L - A1 : 0.0;
  return {s, R, L, A1, A2};
}

double a1_cap(double Z) {
  return f_limit() * std::pow(tf::gamma_tf(), -1.5) * Z;
}

double a2_cap(double Z) { return 0.5 * Z; }

//==============================================================================
SupResult hole_sup(const RadialFunction &sigma, double length,
                   std::size_t nodes, unsigned jobs) {
  if (!(length > 0.0) || nodes < 3)
    throw DomainError("hole_sup: need length > 0 and >= 3 nodes");
  const auto s = log_nodes(1e-4 * length, 1e2 * length, nodes);
  const auto prof = hole_profile(sigma, s, jobs);
  const auto i = static_cast<std::size_t>(
      std::max_element(prof.L.begin(), prof.L.end()) - prof.L.begin());
  const auto [arg, sup] = refine_max(
      [&](double x) { return hole_potential(sigma, x); }, s, prof.L, i);
  return {sup, arg, nodes};
}

SupResult tf_hole_sup(const tf::TFAtom &atom, std::size_t nodes,
                      unsigned jobs) {
  return hole_sup(atom.rho(), std::cbrt(1.0 / atom.Z()), nodes, jobs);
}

SupResult smeared_hole_sup(const tf::TFAtom &atom, double delta,
                           std::size_t nodes, unsigned jobs) {
  const auto sm = tf::smear_density(atom, delta, phase_space::default_shape());
  return hole_sup(sm.rho_delta, std::cbrt(1.0 / atom.Z()), nodes, jobs);
}

} // namespace hatom::hole
