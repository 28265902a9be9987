#include "hatom/lower/semiclassical.hpp"
#include "hatom/errors.hpp"
#include "hatom/hole/exchange_hole.hpp"
#include "hatom/kernels/relativistic.hpp"
#include "hatom/numerics/parallel.hpp"
#include "hatom/numerics/quadrature.hpp"
#include "hatom/phase_space/shape.hpp"
#include "hatom/tf/atom.hpp"
#include <cmath>
#include <numbers>

namespace hatom::lower {

namespace {
constexpr double pi = std::numbers::pi;
const double measure = 2.0 * std::pow(2.0 * pi, -3.0);

void validate(double Z, double kappa, double delta) {
  if (!(Z > 0.0) || !std::isfinite(Z))
    throw DomainError("semiclassical: Z must be positive");
  if (!(kappa > 0.0 && kappa < kernels::kappa_crit))
    throw DomainError("semiclassical: kappa must lie in (0, kappa_crit)");
  if (!(delta > 1.0 / 3.0 && delta < 2.0 / 3.0))
    throw DomainError("semiclassical: delta must lie in (1/3, 2/3)");
}
} // namespace

double xi_max(double V, double c) {
  if (!(c > 0.0))
    throw DomainError("xi_max: c must be positive");
  if (!(V > 0.0))
    return 0.0;
  return std::sqrt(V * (V / (c * c) + 2.0));
}

double momentum_integral(double V, double c, Dispersion d) {
  if (!(V > 0.0))
    return 0.0;
  if (d == Dispersion::non_relativistic)
    return -measure * (8.0 * pi / 15.0) * std::pow(2.0 * V, 1.5) * V;
  const auto prm = kernels::DispersionParams::make(c);
  const double top = xi_max(V, c);
  return measure * quad::gauss(
                       [&](double xi) {
                         return 4.0 * pi * xi * xi *
                                negative_part(kernels::kinetic_energy(xi, prm) - V);
                       },
                       0.0, top, 32);
}

double semiclassical_integral(double Z, const RadialFunction &V, double c,
                              Dispersion d, double core_radius) {
  const auto &grid = V.grid();
  const double q0 = grid.r_min(), q1 = grid.r_max();
  if (d == Dispersion::relativistic && !(core_radius > q0))
    throw DomainError("semiclassical_integral: the relativistic integrand "
                      "needs a core radius above the grid start");
  std::vector<double> breaks;
  const double u0 = std::log(q0), u1 = std::log(q1);
  const int panels = static_cast<int>(std::ceil((u1 - u0) / 0.25));
  for (int i = 0; i <= panels; ++i)
    breaks.push_back(u0 + (u1 - u0) * i / panels);
  if (core_radius > q0 && core_radius < q1) {
    breaks.push_back(std::log(core_radius));
    std::sort(breaks.begin(), breaks.end());
  }
  const double body = quad::gauss_panels(
      [&](double u) {
        const double q = std::exp(u);
        const auto mode = q < core_radius ? Dispersion::non_relativistic : d;
        return 4.0 * pi * q * q * q * momentum_integral(V(q), c, mode);
      },
      breaks, 16);
  // Coulomb head below the grid, non-relativistic: \propto q^{1/2}
  const double head = -measure * (8.0 * pi / 15.0) * std::pow(2.0 * Z, 1.5) *
                      Z * 4.0 * pi * 2.0 * std::sqrt(q0);
  return body + head;
}

double semiclassical_energy(
    std::shared_ptr<const tf::TFUniversalSolution> universal, double Z,
    double kappa, double delta, Dispersion d) {
  validate(Z, kappa, delta);
  const tf::TFAtom atom(Z, std::move(universal));
  const auto sm = tf::smear_density(atom, delta, phase_space::default_shape());
  const auto V = tf::screened_potential(Z, sm.rho_delta);
  const double c = kernels::DispersionParams::for_atom(Z, kappa).c;
  return semiclassical_integral(Z, V, c, d, 1.0 / Z);
}

double measured_correlation_constant(const tf::TFAtom &atom, double delta,
                                     unsigned jobs) {
  return hole::smeared_hole_sup(atom, delta, 64, jobs).sup / atom.Z();
}

LowerBoundReport
lower_bound_total(std::shared_ptr<const tf::TFUniversalSolution> universal,
                  double Z, double kappa, double delta,
                  double correlation_constant) {
  validate(Z, kappa, delta);
  if (!(correlation_constant >= 0.0))
    throw DomainError("lower_bound_total: correlation constant must be >= 0");
  const tf::TFAtom atom(Z, universal);
  LowerBoundReport r;
  r.Z = Z;
  r.kappa = kappa;
  r.delta = delta;
  r.e_semiclassical = semiclassical_energy(universal, Z, kappa, delta);
  r.d_tf = atom.repulsion();
  r.correlation_constant = correlation_constant;
  r.e_tf = atom.energy();
  r.e_lower = r.e_semiclassical - r.d_tf - correlation_constant * Z * Z;
  r.ratio = r.e_lower / r.e_tf;
  return r;
}

SandwichStudy convergence_study(const bounds::BoundContext &ctx, double kappa,
                                double delta,
                                const std::vector<double> &z_grid) {
  if (z_grid.size() < 2)
    throw DomainError("convergence_study: need at least 2 Z values");
  SandwichStudy st;
  st.rows.resize(z_grid.size());
  parallel_for(z_grid.size(), ctx.jobs, [&](std::size_t i) {
    const double Z = z_grid[i];
    const tf::TFAtom atom(Z, ctx.universal);
    const double k = measured_correlation_constant(atom, delta);
    const auto lo = lower_bound_total(ctx.universal, Z, kappa, delta, k);
    const auto up = bounds::upper_bound_total(ctx, Z, kappa, delta);
    const double norm = std::pow(Z, -7.0 / 3.0);
    st.rows[i] = {Z,        kappa,    delta,
                  lo.e_tf,  up.value, lo.e_lower,
                  (up.value - lo.e_tf) * norm,
                  (lo.e_tf - lo.e_lower) * norm,
                  k};
  });
  st.gaps_positive = true;
  st.upper_decreasing = st.lower_decreasing = true;
  std::vector<std::pair<double, double>> up, lo;
  for (std::size_t i = 0; i < st.rows.size(); ++i) {
    const auto &r = st.rows[i];
    st.gaps_positive = st.gaps_positive && r.upper_gap > 0.0 && r.lower_gap > 0.0;
    if (i > 0) {
      st.upper_decreasing =
          st.upper_decreasing && r.upper_gap < st.rows[i - 1].upper_gap;
      st.lower_decreasing =
          st.lower_decreasing && r.lower_gap < st.rows[i - 1].lower_gap;
    }
    up.emplace_back(r.Z, r.upper_gap);
    lo.emplace_back(r.Z, r.lower_gap);
  }
  if (st.gaps_positive && st.rows.size() >= 3) {
    st.upper_fit = bounds::fit_exponent(up, "upper_gap", -1.0 / 9.0, false);
    st.lower_fit = bounds::fit_exponent(lo, "lower_gap", -1.0 / 3.0, false);
  }
  return st;
}

} // namespace hatom::lower
