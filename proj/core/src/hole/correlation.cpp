#include "hatom/hole/correlation.hpp"
#include "hatom/bounds/monte_carlo.hpp"
#include "hatom/errors.hpp"
#include "hatom/hole/exchange_hole.hpp"
#include "hatom/numerics/parallel.hpp"
#include "hatom/numerics/random.hpp"
#include "hatom/phase_space/shape.hpp"
#include <algorithm>
#include <cmath>

namespace hatom::hole {

CorrelationChecker::CorrelationChecker(std::shared_ptr<const tf::TFAtom> atom,
                                       double delta, std::size_t table_nodes,
                                       unsigned jobs)
    : m_atom(std::move(atom)), m_delta(delta) {
  if (!m_atom)
    throw DomainError("CorrelationChecker: atom missing");
  if (table_nodes < 16)
    throw DomainError("CorrelationChecker: need at least 16 table nodes");
  const auto sm =
      tf::smear_density(*m_atom, delta, phase_space::default_shape());
  m_rho_delta = sm.rho_delta;
  m_hartree = tf::hartree_potential(m_rho_delta);
  m_d_tf = m_atom->repulsion();
  m_d_delta = tf::coulomb_energy(m_rho_delta, m_rho_delta);

  const double b = m_atom->b();
  const LogGrid grid(1e-6 * b, 1e3 * b, table_nodes);
  std::vector<double> centers(grid.radii().begin(), grid.radii().end());
  auto prof = hole_profile(m_rho_delta, centers, jobs);
  m_hole = RadialFunction(grid, std::move(prof.L));
}

double CorrelationChecker::hartree(double s) const { return m_hartree(s); }

double CorrelationChecker::hole(double s) const {
  const auto &g = m_hole.grid();
  if (s < g.r_min() || s > g.r_max())
    return hole_potential(m_rho_delta, s);
  return m_hole(s);
}

CorrelationSample
CorrelationChecker::sample(const std::vector<Point> &positions) const {
  const std::size_t n = positions.size();
  if (n < 2)
    throw DomainError("correlation sample: need at least 2 particles");
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto &a = positions[i], &b = positions[j];
      const double d = std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
      if (!(d > 0.0))
        throw DomainError("correlation sample: coincident positions");
      lhs += 1.0 / d;
    }
  double one_body = 0.0;
  for (const auto &x : positions) {
    const double s = std::hypot(x[0], x[1], x[2]);
    one_body += hartree(s) - hole(s);
  }
  const double rhs = one_body - m_d_tf;
  const double rhs_delta = one_body - m_d_delta;
  const bool holds = lhs >= rhs - 1e-6 * (std::abs(lhs) + std::abs(rhs));
  return {lhs, rhs, rhs_delta, holds};
}

CorrelationSample
correlation_inequality_sample(const std::vector<Point> &positions,
                              const CorrelationChecker &checker) {
  return checker.sample(positions);
}

CorrelationSweep correlation_sweep(const CorrelationChecker &checker,
                                   std::uint64_t configurations,
                                   unsigned n_max, std::uint64_t seed,
                                   unsigned jobs) {
  if (n_max < 2)
    throw DomainError("correlation_sweep: n_max must be at least 2");
  const bounds::RadialSampler radial(checker.atom());
  std::vector<CorrelationSample> out(configurations);
  parallel_for(configurations, jobs, [&](std::size_t i) {
    auto gen = rng::stream(seed, i);
    const unsigned n =
        2 + static_cast<unsigned>(rng::uniform(gen) * (n_max - 1));
    std::vector<Point> pos(n);
    for (auto &p : pos) {
      const double r = radial(rng::uniform(gen));
      const auto d = rng::direction(gen);
      p = {r * d[0], r * d[1], r * d[2]};
    }
    out[i] = checker.sample(pos);
  });
  CorrelationSweep sw;
  sw.configurations = configurations;
  sw.min_margin = std::numeric_limits<double>::infinity();
  for (const auto &s : out) {
    if (!s.holds)
      ++sw.violations;
    if (s.lhs < s.rhs_all_delta -
                    1e-6 * (std::abs(s.lhs) + std::abs(s.rhs_all_delta)))
      ++sw.violations_all_delta;
    sw.min_margin = std::min(
        sw.min_margin, (s.lhs - s.rhs) / (std::abs(s.lhs) + std::abs(s.rhs)));
  }
  return sw;
}

} // namespace hatom::hole
