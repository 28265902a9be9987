#pragma once

#include "hatom/numerics/radial.hpp"
#include "hatom/tf/atom.hpp"
#include <vector>

//! Exchange-hole radius and potential of radial densities, evaluated at a
//! point x with |x| = s through bipolar coordinates (r = |y|, u = |x - y|).
namespace hatom::hole {

//! \int_{|x - y| < R} sigma(y) dy.
double ball_mass(const RadialFunction &sigma, double s, double R);

//! \int_{|x - y| < R} sigma(y) / |x - y| dy.
double ball_potential(const RadialFunction &sigma, double s, double R);

//! Smallest R with ball_mass(sigma, s, R) = 1/2 (relative tolerance 1e-10).
//! Throws DomainError when the total mass is below 1/2.
double hole_radius(const RadialFunction &sigma, double s);

//! L_sigma(x) = ball_potential(sigma, s, hole_radius(sigma, s)).
double hole_potential(const RadialFunction &sigma, double s);

struct HoleProfile {
  std::vector<double> centers;
  std::vector<double> R_hole;
  std::vector<double> L;
};

HoleProfile hole_profile(const RadialFunction &sigma,
                         const std::vector<double> &centers, unsigned jobs = 1);

//! f(t) = sqrt(t) \int_{|y| < 1/t} |y|^{-1} |y + e_3|^{-3/2} dy, from the
//! exact angular reduction 4 pi sqrt(t) \int_0^{1/t} (sqrt(1 + r) -
//! sqrt|1 - r|) dr. Tends to 8 pi as t -> 0 and to 2 pi t^{-3/2} as
//! t -> infinity.
double f_function(double t);

//! max f on the log grid t in [1e-4, 1e4] (257 nodes, golden-section
//! refined).
double f_sup();

//! lim_{t -> 0} f(t) = 8 pi, the supremum of the decreasing function f.
double f_limit();

struct A1A2 {
  double s, R_hole, L, A1, A2;
};

//! A1 = \int_{|y| <= 1/Z} rho_TF(x + y) / |y|, A2 the rest of L (zero when
//! the hole radius is below 1/Z).
A1A2 a1_a2_decomposition(const tf::TFAtom &atom, double s);

//! Analytic caps on A1 and A2: ||f||_inf gamma_TF^{-3/2} Z (with
//! ||f||_inf = f_limit()) and Z / 2.
double a1_cap(double Z);
double a2_cap(double Z);

struct SupResult {
  double sup;      //!< largest L found
  double argmax;   //!< its center s
  std::size_t nodes;
};

//! Sup of L_sigma over a `nodes`-point log grid of s in [1e-4, 1e2] *
//! length (length = Z^{-1/3} for atoms), the maximizer refined by
//! golden-section search in ln s.
SupResult hole_sup(const RadialFunction &sigma, double length,
                   std::size_t nodes = 64, unsigned jobs = 1);

//! ||L_{rho_TF}||_inf.
SupResult tf_hole_sup(const tf::TFAtom &atom, std::size_t nodes = 64,
                      unsigned jobs = 1);

//! ||L_{rho_delta}||_inf with rho_delta = rho_TF * g_R^2, R = Z^{-delta}.
SupResult smeared_hole_sup(const tf::TFAtom &atom, double delta,
                           std::size_t nodes = 64, unsigned jobs = 1);

} // namespace hatom::hole
