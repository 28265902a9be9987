#pragma once

#include "hatom/numerics/radial.hpp"
#include "hatom/tf/atom.hpp"
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace hatom::hole {

using Point = std::array<double, 3>;

struct CorrelationSample {
  double lhs;           //!< sum_{mu < nu} 1 / |x_mu - x_nu|
  double rhs;           //!< sum_nu [U_delta - L_delta](x_nu) - D(rho_TF, rho_TF)
  double rhs_all_delta; //!< the same with D(rho_delta, rho_delta)
  bool holds;           //!< lhs >= rhs - 1e-6 (|lhs| + |rhs|)
};

//! Precomputed rho_delta, its Hartree potential U_delta, D(rho_TF, rho_TF),
//! D(rho_delta, rho_delta) and a table of L_{rho_delta} on a log grid of
//! centers (spline-interpolated inside, evaluated directly outside).
class CorrelationChecker {
public:
  CorrelationChecker(std::shared_ptr<const tf::TFAtom> atom, double delta,
                     std::size_t table_nodes = 400, unsigned jobs = 1);

  const tf::TFAtom &atom() const { return *m_atom; }
  double delta() const { return m_delta; }
  const RadialFunction &rho_delta() const { return m_rho_delta; }
  double d_tf() const { return m_d_tf; }
  double d_delta() const { return m_d_delta; }

  double hartree(double s) const;
  double hole(double s) const;

  //! Throws DomainError for N < 2 or coincident positions.
  CorrelationSample sample(const std::vector<Point> &positions) const;

private:
  std::shared_ptr<const tf::TFAtom> m_atom;
  double m_delta;
  RadialFunction m_rho_delta, m_hartree, m_hole;
  double m_d_tf{0.0}, m_d_delta{0.0};
};

CorrelationSample
correlation_inequality_sample(const std::vector<Point> &positions,
                              const CorrelationChecker &checker);

struct CorrelationSweep {
  std::uint64_t configurations{0};
  std::uint64_t violations{0};
  std::uint64_t violations_all_delta{0};
  double min_margin{0.0}; //!< min (lhs - rhs) / (|lhs| + |rhs|)
};

//! `configurations` random configurations with N uniform in [2, n_max],
//! radii drawn from rho_TF / Z and isotropic directions. Configuration i uses
//! an mt19937_64 stream seeded from (seed, i).
CorrelationSweep correlation_sweep(const CorrelationChecker &checker,
                                   std::uint64_t configurations,
                                   unsigned n_max, std::uint64_t seed,
                                   unsigned jobs = 1);

} // namespace hatom::hole
