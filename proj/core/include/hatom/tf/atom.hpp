#pragma once

#include "hatom/numerics/radial.hpp"
#include "hatom/phase_space/shape.hpp"
#include "hatom/tf/universal.hpp"
#include <memory>

namespace hatom::tf {

//! gamma_TF = (3 pi^2)^{2/3} / 2 (two spin states, atomic units).
double gamma_tf();

//! b1 = (3 pi / 4)^{2/3} / 2, so that r = b1 Z^{-1/3} x.
double tf_length_unit();

//! Neutral Thomas-Fermi atom of nuclear charge Z:
//!   V(r) = Z phi(r/b) / r,  rho = (V / gamma_TF)^{3/2},  b = b1 Z^{-1/3}.
class TFAtom {
public:
  TFAtom(double Z, std::shared_ptr<const TFUniversalSolution> universal);

  double Z() const { return m_Z; }
  double b() const { return m_b; }
  const LogGrid &grid() const { return m_rho.grid(); }
  const TFUniversalSolution &universal() const { return *m_universal; }
  std::shared_ptr<const TFUniversalSolution> universal_ptr() const {
    return m_universal;
  }

  //! Tabulated density and potential on the scaled grid.
  const RadialFunction &rho() const { return m_rho; }
  const RadialFunction &V() const { return m_V; }

  //! Pointwise values through the interpolated screening function.
  double density(double r) const;
  double potential(double r) const;
  //! \int_{|y|<r} rho = Z (1 - phi + x phi').
  double enclosed_charge(double r) const;
  //! \int_{|y|>r} rho = Z (phi - x phi').
  double outer_charge(double r) const;

  double energy() const { return m_kinetic + m_attraction + m_repulsion; }
  double kinetic() const { return m_kinetic; }
  double attraction() const { return m_attraction; }
  double repulsion() const { return m_repulsion; }
  //! (3/7) (Z^2 / b) phi'(0).
  double energy_closed_form() const;

private:
  double m_Z;
  double m_b;
  std::shared_ptr<const TFUniversalSolution> m_universal;
  RadialFunction m_rho;
  RadialFunction m_V;
  double m_kinetic{0.0};
  double m_attraction{0.0};
  double m_repulsion{0.0};
};

//! Throws DomainError for Z <= 0 and GridExhaustedError when the scaled grid
//! cannot be represented.
TFAtom build_atom(double Z,
                  std::shared_ptr<const TFUniversalSolution> universal);

//! (rho * 1/|.|)(r) = Q(r)/r + \int_r^inf 4 pi s rho(s) ds on rho's grid.
RadialFunction hartree_potential(const RadialFunction &rho);

//! Z/r - (rho * 1/|.|)(r), assembled from outer masses so the neutral
//! cancellation at large r is avoided.
RadialFunction screened_potential(double Z, const RadialFunction &rho);

//! D(a, b) = 1/2 \iint a(x) b(y) / |x - y|.
double coulomb_energy(const RadialFunction &a, const RadialFunction &b);

struct SmearedDensity {
  double delta;
  double R;
  RadialFunction rho_delta;
};

//! rho_TF * g_R^2 with R = Z^{-delta}; delta in (1/3, 2/3). The shape must be
//! normalized (\int g^2 = 1 within 1e-10).
SmearedDensity smear_density(const TFAtom &atom, double delta,
                             const phase_space::ShapeFunction &shape);

//! rho_TF * g_R^2 for an explicit smearing length R > 0.
RadialFunction smear_with_radius(const TFAtom &atom, double R);

} // namespace hatom::tf
