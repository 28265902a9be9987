#include "hatom/bounds/monte_carlo.hpp"
#include "hatom/errors.hpp"
#include "hatom/numerics/parallel.hpp"
#include "hatom/numerics/random.hpp"
#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace hatom::bounds {

namespace {
constexpr double pi = std::numbers::pi;
using Vec = std::array<double, 3>;

using rng::direction;
using rng::uniform;

double norm(const Vec &v) { return std::hypot(v[0], v[1], v[2]); }

// |ghat| at unit scale against the envelope 3 / (4 pi (1 + eta)^4).
struct EtaSampler {
  phase_space::ShapeFunction g = phase_space::default_shape();
  double l1 = g.fourier_unitary_l1();
  double bound = 0.0;

  EtaSampler() {
    for (int i = 0; i <= 200000; ++i) {
      const double eta = 2000.0 * i / 200000.0;
      bound = std::max(bound, ratio(eta));
    }
    bound *= 1.01;
  }
  double ratio(double eta) const {
    const double e = 1.0 + eta;
    return std::abs(g.fourier_unitary(eta)) / l1 * (4.0 * pi / 3.0) * e * e *
           e * e;
  }
  double draw(std::mt19937_64 &gen) const {
    for (int tries = 0; tries < 100000; ++tries) {
      const double v = std::cbrt(uniform(gen));
      const double eta = v / (1.0 - v);
      if (uniform(gen) * bound <= ratio(eta))
        return eta;
    }
    throw NumericalError("mc_kernel_integral: rejection sampler stalled");
  }
};

const EtaSampler &eta_sampler() {
  static const EtaSampler s;
  return s;
}
} // namespace

double kernel_value(Kernel k, double xi, double xi_prime,
                    const kernels::DispersionParams &prm) {
  const auto w = kernels::kernel_weights(xi, xi_prime, prm);
  switch (k) {
  case Kernel::w1:
    return w.w1;
  case Kernel::w2:
    return w.w2;
  case Kernel::K:
    return w.K;
  }
  return 0.0;
}

//==============================================================================
RadialSampler::RadialSampler(const tf::TFAtom &atom) : m_atom(&atom) {
  const auto &grid = atom.grid();
  m_r.assign(grid.radii().begin(), grid.radii().end());
  m_cdf.resize(m_r.size());
  for (std::size_t i = 0; i < m_r.size(); ++i)
    m_cdf[i] = atom.enclosed_charge(m_r[i]) / atom.Z();
  for (std::size_t i = 1; i < m_cdf.size(); ++i)
    m_cdf[i] = std::max(m_cdf[i], m_cdf[i - 1]);
}

double RadialSampler::operator()(double u) const {
  if (!(u >= 0.0 && u < 1.0))
    throw DomainError("RadialSampler: u must lie in [0, 1)");
  if (u <= m_cdf.front()) {
    // Q / Z ~ (2/3) x^{3/2} below the first node
    const double x = std::pow(1.5 * u, 2.0 / 3.0);
    return std::min(x * m_atom->b(), m_r.front());
  }
  if (u >= m_cdf.back())
    return m_r.back();
  const auto it = std::upper_bound(m_cdf.begin(), m_cdf.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - m_cdf.begin());
  double lo = m_r[i - 1], hi = m_r[i];
  const double Z = m_atom->Z();
  auto f = [&](double r) { return m_atom->enclosed_charge(r) / Z - u; };
  double flo = f(lo), fhi = f(hi);
  if (flo >= 0.0)
    return lo;
  if (fhi <= 0.0)
    return hi;
  std::uintmax_t iters = 100;
  const auto root = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(45),
      iters);
  return 0.5 * (root.first + root.second);
}

//==============================================================================
McEstimate mc_kernel_integral(const phase_space::PhaseSpaceOccupation &occ,
                              const phase_space::ShapeFunction &shape,
                              const kernels::DispersionParams &prm, Kernel k,
                              std::uint64_t samples, std::uint64_t seed,
                              unsigned jobs) {
  if (samples < 2)
    throw DomainError("mc_kernel_integral: need at least 2 samples");
  const auto &atom = occ.atom();
  const RadialSampler radial(atom);
  const EtaSampler &etas = eta_sampler();
  const double R = shape.R();

  const std::uint64_t chunks = (samples + chunk_size - 1) / chunk_size;
  std::vector<double> sum(chunks), sum_sq(chunks);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    auto gen = rng::stream(seed, c);
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + chunk_size);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t n = begin; n < end; ++n) {
      const double q = radial(uniform(gen));
      const double pf = occ.fermi_momentum(q);
      const double pr = pf * std::cbrt(uniform(gen));
      const Vec pd = direction(gen);
      const double eta = etas.draw(gen);
      const Vec ed = direction(gen);
      const double ur = [&] {
        const double v = uniform(gen);
        return v / (1.0 - v);
      }();
      const Vec ud = direction(gen);
      Vec e1, e2, x1, x2;
      for (int d = 0; d < 3; ++d) {
        e1[d] = eta * ed[d];
        e2[d] = e1[d] + ur * ud[d];
        x1[d] = pr * pd[d] + e1[d] / R;
        x2[d] = pr * pd[d] + e2[d] / R;
      }
      const double g2 = std::abs(etas.g.fourier_unitary(norm(e2)));
      const double one_u = 1.0 + ur;
      const double x = etas.l1 * g2 * kernel_value(k, norm(x1), norm(x2), prm) *
                       4.0 * pi * one_u * one_u;
      s += x;
      s2 += x * x;
    }
    sum[c] = s;
    sum_sq[c] = s2;
  });
  double s = 0.0, s2 = 0.0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    s += sum[c];
    s2 += sum_sq[c];
  }
  const double n = static_cast<double>(samples);
  const double mean = s / n;
  const double var = std::max(0.0, (s2 / n - mean * mean) * n / (n - 1.0));
  const double M0 = phase_space::phase_space_moment(occ, 0);
  const double scale = M0 / R;
  return {scale * mean, scale * std::sqrt(var / n), samples};
}

} // namespace hatom::bounds
