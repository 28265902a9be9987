#pragma once

#include "hatom/kernels/relativistic.hpp"
#include "hatom/phase_space/occupation.hpp"
#include "hatom/phase_space/shape.hpp"
#include <cstdint>
#include <vector>

namespace hatom::bounds {

enum class Kernel { w1, w2, K };

double kernel_value(Kernel k, double xi, double xi_prime,
                    const kernels::DispersionParams &prm);

struct McEstimate {
  double mean{0.0};
  double std_error{0.0};
  std::uint64_t samples{0};
};

//! Monte-Carlo estimate of
//!   I = \int dOmega A(p, q) \iint |ghat_R(xi - p)| |ghat_R(xi' - p)|
//!         w(|xi|, |xi'|) / |xi - xi'|^2 dxi dxi'
//! with the unitary transform of g_R (R = shape.R()).
//!
//! (q, p) are drawn exactly from the occupied region (q by inverse CDF of
//! rho_TF / Z, p uniform in the Fermi ball), eta = R (xi - p) from |ghat| by
//! rejection and u = eta' - eta from 1 / (4 pi u^2 (1 + u)^2).
//!
//! Samples are split into fixed chunks of `chunk_size`, each with its own
//! mt19937_64 stream seeded from (seed, chunk index); chunk sums are reduced
//! in index order, so the result depends only on (samples, seed), never on
//! `jobs`.
McEstimate mc_kernel_integral(const phase_space::PhaseSpaceOccupation &occ,
                              const phase_space::ShapeFunction &shape,
                              const kernels::DispersionParams &prm, Kernel k,
                              std::uint64_t samples, std::uint64_t seed,
                              unsigned jobs = 1);

inline constexpr std::uint64_t chunk_size = 1u << 14;

//! Sampler of radii from rho_TF / Z by inverse CDF on the enclosed charge.
class RadialSampler {
public:
  explicit RadialSampler(const tf::TFAtom &atom);
  //! Radius q with Q(q) / Z = u, u in [0, 1).
  double operator()(double u) const;

private:
  const tf::TFAtom *m_atom;
  std::vector<double> m_r, m_cdf;
};

} // namespace hatom::bounds
