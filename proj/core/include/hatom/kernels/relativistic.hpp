#pragma once

#include <array>
#include <complex>
#include <numbers>

//! Relativistic dispersion, the Pauli-to-Dirac spinor embedding and the
//! momentum-space kernels that enter the upper-bound error terms.
//!
//! All functions are pure. Momenta are magnitudes in atomic units; c is the
//! speed of light in the same units.
namespace hatom::kernels {

//! Largest Z/c for which the Brown-Ravenhall form is bounded below.
inline constexpr double kappa_crit =
    2.0 / (std::numbers::pi / 2.0 + 2.0 / std::numbers::pi);

struct DispersionParams {
  double c{137.035999084};
  double kappa{0.0};

  //! Validates c > 0 and 0 <= kappa < kappa_crit.
  static DispersionParams make(double c, double kappa = 0.0);
  //! c = Z / kappa for a neutral atom at fixed ratio kappa in (0, kappa_crit).
  static DispersionParams for_atom(double Z, double kappa);
};

//! E_c(p) = sqrt(c^2 p^2 + c^4).
double energy_dispersion(double p, const DispersionParams &prm);

//! E_c(p) - c^2, evaluated as c^2 p^2 / (E_c(p) + c^2) (no cancellation).
double kinetic_energy(double p, const DispersionParams &prm);

//! N_c(p) = [2 E_c(p) (E_c(p) + c^2)]^{1/2}.
double normalization_factor(double p, const DispersionParams &prm);

struct EmbeddingMultipliers {
  double m1; //!< (E_c + c^2) / N_c, upper-spinor factor
  double m2; //!< c p / N_c, lower-spinor factor
};

//! Multipliers of the unitary embedding u -> (m1 u, m2 sigma.p/|p| u).
EmbeddingMultipliers embedding_multipliers(double p,
                                           const DispersionParams &prm);

//! p^2/2 - (E_c(p) - c^2) >= 0.
double kinetic_concavity_gap(double p, const DispersionParams &prm);

struct KernelWeights {
  double w1;       //!< |1 - m1(xi) m1(xi')|, deviation of phi_1 from 1/|x|
  double w2;       //!< m2(xi) m2(xi') = c^2 xi xi' / (N_c N_c')
  double K;        //!< w1 + w2, electron-electron kernel
  double w1_bound; //!< (3 c^2 xi xi' + 2 c^3 (xi + xi')) / (2 c^4)
};

KernelWeights kernel_weights(double xi, double xi_prime,
                             const DispersionParams &prm);

//! Deviation of the per-momentum 4x4 identities from exactness.
struct ProjectorReport {
  double conjugation{0.0};   //!< |U^-1 D0 U + D0| / E_c
  double square{0.0};        //!< |D0^2 / E_c^2 - 1|
  double completeness{0.0};  //!< |L+ + L- - 1|
  double idempotency{0.0};   //!< max |L(+-)^2 - L(+-)|
  double swap{0.0};          //!< |L- - U^-1 L+ U|
  double trace{0.0};         //!< |tr L+ - 2|
  double spin_doubling{0.0}; //!< |tr(L+ X) - 2a|, |tr(L- X) - 2a| for X = a 1
  double max_deviation{0.0};
  bool passed{false};
};

inline constexpr double projector_tolerance = 1e-12;

//! Row-major 4x4 complex matrix.
using Matrix4 = std::array<std::complex<double>, 16>;

//! D0(xi) = c alpha.xi + c^2 beta in the standard representation.
Matrix4 dirac_matrix(const std::array<double, 3> &xi,
                     const DispersionParams &prm);

//! L(+-) = (1 +- D0/E_c)/2; sign > 0 selects L+.
Matrix4 spectral_projector(const std::array<double, 3> &xi,
                           const DispersionParams &prm, int sign);

//! Builds the free Dirac matrix D0(xi) = c alpha.xi + c^2 beta in the
//! standard representation, the projectors L(+-) = (1 +- D0/|D0|)/2 and the
//! block matrix U = [[0, 1], [-1, 0]], and measures every identity.
ProjectorReport projector_identity_check(const std::array<double, 3> &xi,
                                         const DispersionParams &prm);

} // namespace hatom::kernels
