#include "hatom/bounds/reduced_integrals.hpp"
#include "hatom/errors.hpp"
#include "hatom/numerics/quadrature.hpp"
#include "hatom/phase_space/shape.hpp"
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace hatom::bounds {

namespace {
constexpr double pi = std::numbers::pi;

struct Panels {
  std::vector<double> edges;
  std::vector<double> nodes, weights, f; // f = eta |ghat(eta)|
  std::vector<std::size_t> panel_of;
};

double radial_factor(double eta) {
  static const phase_space::ShapeFunction g = phase_space::default_shape();
  return eta * std::abs(g.fourier_unitary(eta));
}

Panels make_panels(double cutoff) {
  Panels p;
  p.edges.push_back(0.0);
  auto zeros = phase_space::fourier_zeros(cutoff);
  zeros.push_back(cutoff);
  for (double z : zeros) {
    const double lo = p.edges.back();
    if (!(z > lo))
      continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil(z - lo)));
    for (int k = 1; k <= pieces; ++k)
      p.edges.push_back(lo + (z - lo) * k / pieces);
  }
  const auto &rule = quad::gauss_legendre(16);
  for (std::size_t j = 0; j + 1 < p.edges.size(); ++j) {
    const double a = p.edges[j], b = p.edges[j + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + half * rule.nodes[i];
      p.nodes.push_back(x);
      p.weights.push_back(half * rule.weights[i]);
      p.f.push_back(radial_factor(x));
      p.panel_of.push_back(j);
    }
  }
  return p;
}

double log_kernel(double a, double b) {
  return std::log((a + b) / std::abs(a - b));
}

// \int_lo^hi g(x) with g carrying a (near-)logarithmic singularity at `at`,
// where `at` is lo or hi: cubic clustering of Gauss nodes toward it.
template <class G> double clustered(G &&g, double lo, double hi, double at) {
  const double d = hi - lo;
  if (!(d > 0.0))
    return 0.0;
  const bool at_lo = std::abs(at - lo) <= std::abs(at - hi);
  return quad::gauss(
      [&](double y) {
        const double off = d * y * y * y;
        const double x = at_lo ? lo + off : hi - off;
        return 3.0 * d * y * y * g(x);
      },
      0.0, 1.0, 32);
}

template <std::size_t M, class W>
std::array<double, M> integrate_all(const Panels &P, W &&w) {
  std::array<double, M> total{};
  const std::size_t n = P.nodes.size();
  const std::size_t last_panel = P.edges.size() - 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double eta = P.nodes[i];
    const std::size_t home = P.panel_of[i];
    std::array<double, M> inner{};
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pk = P.panel_of[k];
      if (pk + 1 >= home && pk <= home + 1)
        continue;
      const double eta2 = P.nodes[k];
      const double base = P.weights[k] * P.f[k] * log_kernel(eta, eta2);
      const auto wv = w(eta, eta2);
      for (std::size_t m = 0; m < M; ++m)
        inner[m] += base * wv[m];
    }
    // Home panel split at eta plus both neighbours, log-clustered.
    for (std::size_t m = 0; m < M; ++m) {
      auto g = [&](double x) {
        return radial_factor(x) * log_kernel(eta, x) * w(eta, x)[m];
      };
      const double a = P.edges[home], b = P.edges[home + 1];
      double s = clustered(g, a, eta, eta) + clustered(g, eta, b, eta);
      if (home > 0)
        s += clustered(g, P.edges[home - 1], a, a);
      if (home < last_panel)
        s += clustered(g, b, P.edges[home + 2], b);
      inner[m] += s;
    }
    for (std::size_t m = 0; m < M; ++m)
      total[m] += P.weights[i] * P.f[i] * inner[m];
  }
  for (auto &t : total)
    t *= 8.0 * pi * pi;
  return total;
}
} // namespace

double reduced_integral(const ReducedWeight &w, double cutoff) {
  if (!(cutoff > 10.0))
    throw DomainError("reduced_integral: cutoff must exceed 10");
  const Panels P = make_panels(cutoff);
  return integrate_all<1>(P, [&](double a, double b) {
    return std::array<double, 1>{w(a, b)};
  })[0];
}

ReducedIntegrals reduced_integrals(double cutoff, bool extrapolate) {
  if (!(cutoff > 10.0))
    throw DomainError("reduced_integrals: cutoff must exceed 10");
  auto at = [](double L) {
    return integrate_all<3>(make_panels(L), [](double a, double b) {
      return std::array<double, 3>{a * b, a + b, 1.0};
    });
  };
  const auto v2 = at(cutoff);
  if (!extrapolate)
    return {v2[0], v2[1], v2[2], cutoff, false};
  const auto v1 = at(0.5 * cutoff);
  const auto v0 = at(0.25 * cutoff);
  std::array<double, 3> out{};
  for (std::size_t m = 0; m < 3; ++m) {
    const double d1 = v2[m] - v1[m], d0 = v1[m] - v0[m];
    // Aitken only for a monotone, contracting sequence.
    out[m] = (d1 * d0 > 0.0 && std::abs(d1) < std::abs(d0))
                 ? v2[m] - d1 * d1 / (d1 - d0)
                 : v2[m];
  }
  return {out[0], out[1], out[2], cutoff, true};
}

const ReducedIntegrals &default_reduced_integrals() {
  static const ReducedIntegrals value = reduced_integrals();
  return value;
}

} // namespace hatom::bounds
