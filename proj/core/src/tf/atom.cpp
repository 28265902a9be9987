#include "hatom/tf/atom.hpp"
#include "hatom/errors.hpp"
#include "hatom/numerics/quadrature.hpp"
#include <algorithm>
#include <cmath>
#include <numbers>

namespace hatom::tf {

namespace {
constexpr double pi = std::numbers::pi;

std::vector<double> reverse_cumulative(std::vector<double> g, double h) {
  std::reverse(g.begin(), g.end());
  auto c = cumulative_uniform(g, h);
  std::reverse(c.begin(), c.end());
  return c;
}

struct ShellMoments {
  std::vector<double> inner_mass; // \int_0^r 4 pi s^2 rho
  std::vector<double> outer_mass; // \int_r^inf 4 pi s^2 rho
  std::vector<double> outer_pot;  // \int_r^inf 4 pi s rho
};

ShellMoments shell_moments(const RadialFunction &rho) {
  const auto &grid = rho.grid();
  const auto n = grid.size();
  const double h = grid.step();
  std::vector<double> g3(n), g2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.r(i);
    g2[i] = 4.0 * pi * r * r * rho.value(i);
    g3[i] = g2[i] * r;
  }
  ShellMoments m;
  m.inner_mass = cumulative_uniform(g3, h);
  const double head = power_law_head(rho.value(0), grid.r_min(),
                                     rho.head_exponent(), 0.0);
  for (auto &v : m.inner_mass)
    v += head;
  m.outer_mass = reverse_cumulative(g3, h);
  m.outer_pot = reverse_cumulative(g2, h);
  if (rho.tail() == Tail::power_law) {
    const double p = rho.tail_exponent();
    const double t0 = power_law_tail(rho.value(n - 1), grid.r_max(), p, 0.0);
    const double t1 = power_law_tail(rho.value(n - 1), grid.r_max(), p, -1.0);
    for (std::size_t i = 0; i < n; ++i) {
      m.outer_mass[i] += t0;
      m.outer_pot[i] += t1;
    }
  }
  return m;
}
} // namespace

double gamma_tf() {
  static const double v = 0.5 * std::pow(3.0 * pi * pi, 2.0 / 3.0);
  return v;
}

double tf_length_unit() {
  static const double v = 0.5 * std::pow(0.75 * pi, 2.0 / 3.0);
  return v;
}

//==============================================================================
TFAtom::TFAtom(double Z, std::shared_ptr<const TFUniversalSolution> universal)
    : m_Z(Z), m_universal(std::move(universal)) {
  if (!(Z > 0.0) || !std::isfinite(Z))
    throw DomainError("TFAtom: Z must be positive");
  if (!m_universal)
    throw DomainError("TFAtom: universal solution missing");
  m_b = tf_length_unit() * std::cbrt(1.0 / Z);
  const LogGrid grid = m_universal->grid().scaled(m_b);
  if (!(grid.r_min() > 0.0) || !std::isfinite(grid.r_max()) ||
      !(grid.r_min() < grid.r_max()))
    throw GridExhaustedError("TFAtom: scaled grid is not representable");

  const auto n = grid.size();
  const auto phi = m_universal->phi();
  const double gam = gamma_tf();
  std::vector<double> V(n), rho(n), rho53(n);
  for (std::size_t i = 0; i < n; ++i) {
    V[i] = Z * phi[i] / grid.r(i);
    const double t = V[i] / gam;
    rho[i] = t * std::sqrt(t);
    rho53[i] = std::pow(rho[i], 5.0 / 3.0);
  }
  m_V = RadialFunction(grid, std::move(V));
  m_rho = RadialFunction(grid, std::move(rho));
  const RadialFunction r53(grid, std::move(rho53));

  m_kinetic = 0.6 * gam * r53.integrate();
  m_attraction = -Z * m_rho.integrate_weighted(-1.0);
  m_repulsion = coulomb_energy(m_rho, m_rho);
}

double TFAtom::potential(double r) const {
  if (!(r > 0.0))
    throw DomainError("TFAtom::potential: r must be positive");
  return m_Z * m_universal->phi_at(r / m_b) / r;
}

double TFAtom::density(double r) const {
  const double t = potential(r) / gamma_tf();
  return t * std::sqrt(t);
}

double TFAtom::enclosed_charge(double r) const {
  if (!(r >= 0.0))
    throw DomainError("TFAtom::enclosed_charge: r must be non-negative");
  const double x = r / m_b;
  if (x < 1e-4) {
    const double x32 = x * std::sqrt(x);
    return m_Z * (2.0 / 3.0 * x32 + 0.6 * m_universal->slope0() * x32 * x);
  }
  const auto &u = *m_universal;
  return m_Z * (1.0 - u.phi_at(x) + x * u.dphi_at(x));
}

double TFAtom::outer_charge(double r) const {
  if (!(r >= 0.0))
    throw DomainError("TFAtom::outer_charge: r must be non-negative");
  const double x = r / m_b;
  const auto &u = *m_universal;
  return m_Z * (u.phi_at(x) - x * u.dphi_at(x));
}

double TFAtom::energy_closed_form() const {
  return 3.0 / 7.0 * m_Z * m_Z / m_b * m_universal->slope0();
}

TFAtom build_atom(double Z,
                  std::shared_ptr<const TFUniversalSolution> universal) {
  return TFAtom(Z, std::move(universal));
}

//==============================================================================
RadialFunction hartree_potential(const RadialFunction &rho) {
  const auto m = shell_moments(rho);
  const auto &grid = rho.grid();
  std::vector<double> U(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    U[i] = m.inner_mass[i] / grid.r(i) + m.outer_pot[i];
  return RadialFunction(grid, std::move(U));
}

RadialFunction screened_potential(double Z, const RadialFunction &rho) {
  const auto m = shell_moments(rho);
  const auto &grid = rho.grid();
  const double excess = Z - (m.inner_mass.front() + m.outer_mass.front());
  std::vector<double> V(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    V[i] = (excess + m.outer_mass[i]) / r - m.outer_pot[i];
  }
  return RadialFunction(grid, std::move(V));
}

double coulomb_energy(const RadialFunction &a, const RadialFunction &b) {
  const RadialFunction U = hartree_potential(b);
  const auto &grid = a.grid();
  const bool same = grid.same_as(b.grid());
  std::vector<double> prod(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    prod[i] = a.value(i) * (same ? U.value(i) : U(grid.r(i)));
  const RadialFunction f(grid, std::move(prod), a.tail());
  const double d = 0.5 * f.integrate();
  if (!std::isfinite(d))
    throw NumericalError("coulomb_energy: non-finite result");
  return d;
}

//==============================================================================
RadialFunction smear_with_radius(const TFAtom &atom, double R) {
  if (!(R > 0.0))
    throw DomainError("smear_with_radius: R must be positive");
  const auto &grid = atom.grid();
  if (R < 100.0 * grid.r_min())
    throw GridExhaustedError("smear_with_radius: smearing length below grid "
                             "resolution");
  const phase_space::ShapeFunction shape(R);
  std::vector<double> out(grid.size());
  std::vector<double> breaks;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    breaks.clear();
    breaks.push_back(std::sqrt(std::max(0.0, r - R)));
    if (r < R)
      breaks.push_back(std::sqrt(R - r));
    breaks.push_back(std::sqrt(r + R));
    std::vector<double> fine;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      fine.push_back(breaks[k]);
      fine.push_back(0.5 * (breaks[k] + breaks[k + 1]));
    }
    fine.push_back(breaks.back());
    const double integral = quad::gauss_panels(
        [&](double v) {
          const double s = v * v;
          return 2.0 * v * s * atom.density(s) * shape.smearing_kernel(r, s);
        },
        fine, 32);
    out[i] = 2.0 * pi / r * integral;
  }
  return RadialFunction(grid, std::move(out));
}

SmearedDensity smear_density(const TFAtom &atom, double delta,
                             const phase_space::ShapeFunction &shape) {
  if (!(delta > 1.0 / 3.0 && delta < 2.0 / 3.0))
    throw DomainError("smear_density: delta must lie in (1/3, 2/3)");
  if (std::abs(shape.norm_sq() - 1.0) > 1e-10)
    throw DomainError("smear_density: shape function is not normalized");
  const double R = shape.R() * std::pow(atom.Z(), -delta);
  return {delta, R, smear_with_radius(atom, R)};
}

} // namespace hatom::tf
