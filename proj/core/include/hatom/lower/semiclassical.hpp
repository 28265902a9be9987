#pragma once

#include "hatom/bounds/lemmas.hpp"
#include "hatom/bounds/scaling.hpp"
#include "hatom/numerics/radial.hpp"
#include "hatom/tf/atom.hpp"
#include <memory>
#include <vector>

namespace hatom::lower {

//! [t]_- = min(t, 0).
inline double negative_part(double t) { return t < 0.0 ? t : 0.0; }

enum class Dispersion { relativistic, non_relativistic };

//! Root of E_c(xi) - c^2 = V: sqrt(V^2 + 2 c^2 V) / c, evaluated as
//! sqrt(V (V / c^2 + 2)) without cancellation.
double xi_max(double V, double c);

//! 2 (2 pi)^{-3} \int 4 pi xi^2 [T(xi) - V]_- dxi at a single point, with
//! T = E_c - c^2 (relativistic) or xi^2 / 2.
double momentum_integral(double V, double c, Dispersion d);

//! 2 (2 pi)^{-3} \iint [T(xi) - V(q)]_- dxi dq for a radial potential
//! V (values below the grid extrapolated as Z / q).
//!
//! The relativistic integrand decays only like q^{-4} at the nucleus, so
//! the non-relativistic dispersion is used for q < core_radius (pass 1 / Z;
//! 0 disables the core treatment and throws if the grid reaches q = 0 too
//! closely).
double semiclassical_integral(double Z, const RadialFunction &V, double c,
                              Dispersion d, double core_radius);

//! The semiclassical energy with V_delta = Z / |x| - rho_delta * |x|^{-1}.
double semiclassical_energy(
    std::shared_ptr<const tf::TFUniversalSolution> universal, double Z,
    double kappa, double delta, Dispersion d = Dispersion::relativistic);

struct LowerBoundReport {
  double Z{0.0}, kappa{0.0}, delta{0.0};
  double e_semiclassical{0.0};
  double d_tf{0.0};
  double correlation_constant{0.0};
  double e_tf{0.0};
  double e_lower{0.0};
  double ratio{0.0}; //!< e_lower / E_TF
};

//! k = ||L_{rho_delta}||_inf / Z from the 64-node sup scan.
double measured_correlation_constant(const tf::TFAtom &atom, double delta,
                                     unsigned jobs = 1);

//! e_lower = semiclassical_energy - D(rho_TF, rho_TF) - k Z^2 (N = Z).
LowerBoundReport
lower_bound_total(std::shared_ptr<const tf::TFUniversalSolution> universal,
                  double Z, double kappa, double delta,
                  double correlation_constant);

struct SandwichRow {
  double Z, kappa, delta;
  double e_tf, upper, lower;
  double upper_gap; //!< (upper - E_TF) Z^{-7/3}
  double lower_gap; //!< (E_TF - lower) Z^{-7/3}
  double correlation_constant;
};

struct SandwichStudy {
  std::vector<SandwichRow> rows;
  bounds::ScalingFit upper_fit; //!< fit of upper_gap against Z
  bounds::ScalingFit lower_fit; //!< fit of lower_gap against Z
  bool gaps_positive{false};
  bool upper_decreasing{false}; //!< strictly, across the grid
  bool lower_decreasing{false};
};

//! Sandwich table over `z_grid` with the correlation constant measured at
//! each Z. Points run concurrently on ctx.jobs threads.
SandwichStudy convergence_study(const bounds::BoundContext &ctx, double kappa,
                                double delta, const std::vector<double> &z_grid);

} // namespace hatom::lower
