#include "hatom/phase_space/occupation.hpp"
#include "hatom/errors.hpp"
#include "hatom/numerics/quadrature.hpp"
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace hatom::phase_space {

namespace {
constexpr double pi = std::numbers::pi;
}

PhaseSpaceOccupation::PhaseSpaceOccupation(
    std::shared_ptr<const tf::TFAtom> atom)
    : m_atom(std::move(atom)) {
  if (!m_atom)
    throw DomainError("PhaseSpaceOccupation: atom missing");
}

bool PhaseSpaceOccupation::occupied(double p, double q) const {
  if (!(p >= 0.0) || !(q > 0.0))
    throw DomainError("PhaseSpaceOccupation::occupied: need p >= 0, q > 0");
  return 0.5 * p * p <= m_atom->potential(q);
}

double PhaseSpaceOccupation::fermi_momentum(double q) const {
  return std::sqrt(2.0 * m_atom->potential(q));
}

double PhaseSpaceOccupation::turning_radius(double p) const {
  if (!(p > 0.0))
    throw DomainError("turning_radius: p must be positive");
  const double target = 0.5 * p * p;
  const double b = m_atom->b();
  auto f = [&](double u) { return std::log(m_atom->potential(std::exp(u)) / target); };
  double lo = std::log(1e-16 * b), hi = std::log(1e9 * b);
  const double flo = f(lo), fhi = f(hi);
  if (flo <= 0.0)
    return std::exp(lo);
  if (fhi >= 0.0)
    return std::exp(hi);
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50), it);
  return std::exp(0.5 * (r.first + r.second));
}

//==============================================================================
double phase_space_moment(const PhaseSpaceOccupation &occ, int k) {
  if (k < 0 || k > 3)
    throw DomainError("phase_space_moment: k must lie in {0, 1, 2, 3}");
  if (k == 3)
    throw NumericalError("phase_space_moment: M_3 diverges logarithmically "
                         "at the nucleus");
  const auto &atom = occ.atom();
  const double a = 0.5 * (k + 3);
  const double b = atom.b();
  const double u0 = std::log(1e-12 * b), u1 = std::log(1e7 * b);
  const int panels = static_cast<int>(std::ceil((u1 - u0) / 0.5));
  std::vector<double> breaks(panels + 1);
  for (int i = 0; i <= panels; ++i)
    breaks[i] = u0 + (u1 - u0) * i / panels;
  const double body = quad::gauss_panels(
      [&](double u) {
        const double q = std::exp(u);
        return std::pow(2.0 * atom.potential(q), a) * 4.0 * pi * q * q * q;
      },
      breaks, 16);
  const double q0 = std::exp(u0);
  const double head =
      4.0 * pi * std::pow(2.0 * atom.Z(), a) * std::pow(q0, 3.0 - a) / (3.0 - a);
  const double pref = 2.0 * std::pow(2.0 * pi, -3.0) * 4.0 * pi / (k + 3.0);
  return pref * (body + head);
}

//==============================================================================
RadialFunction trial_density(const PhaseSpaceOccupation &occ,
                             const ShapeFunction &shape) {
  const auto &atom = occ.atom();
  const auto &u = atom.universal();
  const double b = atom.b(), Z = atom.Z(), R = shape.R();
  const double s0 = u.slope0();
  auto F = [&](double w) {
    return Z / (4.0 * pi * b) * (u.dphi_at(w / b) - s0);
  };
  auto shell = [&](double r, double t) {
    const double lo = std::abs(r - t), hi = r + t;
    if (t < 0.1 * r || r < 0.1 * t)
      return quad::gauss([&](double s) { return s * atom.density(s); }, lo, hi,
                         8);
    return F(hi) - F(lo);
  };

  const auto &grid = atom.grid();
  std::vector<double> out(grid.size());
  std::vector<double> breaks;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    breaks = {0.0, R};
    for (double c : {0.1 * r, r, 10.0 * r})
      if (c > 0.0 && c < R)
        breaks.push_back(c);
    std::sort(breaks.begin(), breaks.end());
    auto integrand = [&](double t) {
      return t * shape.density(t) * shell(r, t);
    };
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double a = breaks[k], c = breaks[k + 1];
      if (c == r) {
        // sqrt-type endpoint at t = r
        sum += quad::gauss(
            [&](double y) { return 2.0 * y * (c - a) * integrand(c - (c - a) * y * y); },
            0.0, 1.0, 48);
      } else if (a == r) {
        sum += quad::gauss(
            [&](double y) { return 2.0 * y * (c - a) * integrand(a + (c - a) * y * y); },
            0.0, 1.0, 48);
      } else {
        sum += quad::gauss(
            [&](double y) { return 2.0 * y * integrand(y * y); },
            std::sqrt(a), std::sqrt(c), 48);
      }
    }
    out[i] = 2.0 * pi / r * sum;
  }
  return RadialFunction(grid, std::move(out));
}

double kinetic_error_term(double Z, const ShapeFunction &shape, double delta) {
  if (!(Z > 0.0))
    throw DomainError("kinetic_error_term: Z must be positive");
  if (!(delta > 1.0 / 3.0 && delta < 2.0 / 3.0))
    throw DomainError("kinetic_error_term: delta must lie in (1/3, 2/3)");
  const double R = shape.R() * std::pow(Z, -delta);
  return Z * shape.dilated(R).grad_norm_sq();
}

} // namespace hatom::phase_space
