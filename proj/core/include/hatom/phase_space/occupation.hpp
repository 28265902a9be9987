#pragma once

#include "hatom/numerics/radial.hpp"
#include "hatom/phase_space/shape.hpp"
#include "hatom/tf/atom.hpp"
#include <memory>

namespace hatom::phase_space {

//! Indicator occupation A(p, q) = 1 iff p^2/2 <= V_Z(q), with the measure
//! dOmega = 2 (2 pi)^{-3} dp dq (two spin states).
class PhaseSpaceOccupation {
public:
  explicit PhaseSpaceOccupation(std::shared_ptr<const tf::TFAtom> atom);

  const tf::TFAtom &atom() const { return *m_atom; }
  std::shared_ptr<const tf::TFAtom> atom_ptr() const { return m_atom; }

  bool occupied(double p, double q) const;
  //! sqrt(2 V(q)).
  double fermi_momentum(double q) const;
  //! The radius q* with 2 V(q*) = p^2 (V is strictly decreasing).
  double turning_radius(double p) const;

private:
  std::shared_ptr<const tf::TFAtom> m_atom;
};

//! M_k = \int dOmega A |p|^k
//!     = 2 (2 pi)^{-3} 4 pi / (k+3) \int (2 V(q))^{(k+3)/2} 4 pi q^2 dq.
//! k in {0, 1, 2}; k = 3 diverges logarithmically at the nucleus and throws
//! NumericalError.
double phase_space_moment(const PhaseSpaceOccupation &occ, int k);

//! Coherent-state density rho_TF * g_R^2, evaluated by integrating the
//! closed-form shell charge \int_0^w s rho(s) ds = Z (phi'(w/b) - phi'(0)) /
//! (4 pi b) against the profile. `shape` carries the dilation R.
RadialFunction trial_density(const PhaseSpaceOccupation &occ,
                             const ShapeFunction &shape);

//! Z ||grad g_R||^2 with R = Z^{-delta}; equals Z^{1+2 delta} ||grad g||^2.
double kinetic_error_term(double Z, const ShapeFunction &shape, double delta);

} // namespace hatom::phase_space
