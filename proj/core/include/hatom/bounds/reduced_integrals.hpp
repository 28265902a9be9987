#pragma once

#include <functional>

namespace hatom::bounds {

//! Angular-reduced momentum integrals of the unit quartic bump,
//!   C_w = \iint d^3eta d^3eta' |ghat(eta)| |ghat(eta')| w / |eta - eta'|^2
//!       = 8 pi^2 \int\int eta |ghat(eta)| eta' |ghat(eta')| w
//!                  ln((eta + eta') / |eta - eta'|) deta deta',
//! with the unitary transform ghat, truncated at eta, eta' <= cutoff
//! When extrapolated, the values at cutoff/4, cutoff/2 and cutoff are
//! combined by Aitken's delta-squared process.
struct ReducedIntegrals {
  double prod; //!< w = eta eta'
  double sum;  //!< w = eta + eta'
  double one;  //!< w = 1
  double cutoff;
  bool extrapolated;
};

using ReducedWeight = std::function<double(double, double)>;

//! C_w for an arbitrary weight w(eta, eta').
double reduced_integral(const ReducedWeight &w, double cutoff = 400.0);

ReducedIntegrals reduced_integrals(double cutoff = 400.0,
                                   bool extrapolate = true);

//! Cached reduced_integrals() at the default cutoff.
const ReducedIntegrals &default_reduced_integrals();

} // namespace hatom::bounds
