#include "hatom/tf/universal.hpp"
#include "hatom/errors.hpp"
#include "hatom/numerics/ode.hpp"
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace hatom::tf {

namespace {
using ode::State2;

// (phi, u = dphi/dx) as functions of t = sqrt(x)
State2 rhs_t(double t, const State2 &y) {
  const double p = std::max(y[0], 0.0);
  return {2.0 * t * y[1], 2.0 * p * std::sqrt(p)};
}

enum class Fate { crossed, turned, survived };

struct Shot {
  Fate fate;
  double x_event;
};

struct Segment {
  double x0, phi0, u0;
  double x_trust;
};

constexpr std::size_t max_segments = 64;

Shot classify(double x0, double phi0, double u0, double x_far,
              const ode::AdaptiveOptions &opt) {
  double h = 0.0;
  auto stop = [](double, const State2 &y) {
    return y[0] <= 0.0 || y[1] >= 0.0;
  };
  const auto r = ode::dormand_prince(rhs_t, std::sqrt(x0), {phi0, u0},
                                     std::sqrt(x_far), opt, h, stop);
  if (!r.stopped)
    return {Fate::survived, x_far};
  return {r.y[0] <= 0.0 ? Fate::crossed : Fate::turned, r.t * r.t};
}

// `lo` must cross zero, `hi` must turn upward.
Segment bisect(double x0, double phi0, double lo, double hi, double x_far,
               const ode::AdaptiveOptions &opt) {
  Shot s_lo = classify(x0, phi0, lo, x_far, opt);
  Shot s_hi = classify(x0, phi0, hi, x_far, opt);
  if (s_lo.fate != Fate::crossed || s_hi.fate != Fate::turned)
    throw ConvergenceError(
        fmt::format("TF shooting: slope bracket [{}, {}] at x = {} does not "
                    "enclose the decaying solution",
                    lo, hi, x0),
        lo, hi);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi)
      break;
    const Shot s = classify(x0, phi0, mid, x_far, opt);
    if (s.fate == Fate::survived)
      return {x0, phi0, mid, x_far};
    if (s.fate == Fate::crossed) {
      lo = mid;
      s_lo = s;
    } else {
      hi = mid;
      s_hi = s;
    }
  }
  const double x_event = std::min(s_lo.x_event, s_hi.x_event);
  return {x0, phi0, 0.5 * (lo + hi), x0 + (x_event - x0) / 16.0};
}

ode::AdaptiveOptions shooting_options(double tolerance) {
  ode::AdaptiveOptions opt;
  opt.rtol = std::clamp(tolerance * 1e-2, 3e-14, 1e-8);
  opt.atol = 1e-300;
  opt.h_init = 1e-3;
  return opt;
}

double hermite(double y0, double y1, double d0, double d1, double theta) {
  const double t2 = theta * theta, t3 = t2 * theta;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
}
} // namespace

//==============================================================================
TFUniversalSolution::TFUniversalSolution(LogGrid grid, std::vector<double> phi,
                                         std::vector<double> dphi,
                                         double slope0, double slope0_check,
                                         double tolerance)
    : m_grid(std::move(grid)), m_phi(std::move(phi)), m_dphi(std::move(dphi)),
      m_slope0(slope0), m_slope0_check(slope0_check), m_tolerance(tolerance) {
  const auto n = m_grid.size();
  if (m_phi.size() != n || m_dphi.size() != n)
    throw DomainError("TFUniversalSolution: array sizes do not match grid");
  if (!(slope0 < 0.0))
    throw DomainError("TFUniversalSolution: slope0 must be negative");
  if (std::abs(m_phi[0] - 1.0) > 10.0 * m_grid.r_min())
    throw DomainError("TFUniversalSolution: phi(x_min) must be close to 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(m_phi[i] > 0.0) || !(m_dphi[i] < 0.0))
      throw DomainError("TFUniversalSolution: phi must be positive and "
                        "strictly decreasing");
    if (i > 0 && !(m_phi[i] < m_phi[i - 1]))
      throw DomainError("TFUniversalSolution: phi not strictly decreasing");
  }
}

std::size_t TFUniversalSolution::locate(double x, double &theta,
                                        double &h) const {
  const auto n = m_grid.size();
  auto i = static_cast<std::size_t>(std::max(0.0, m_grid.index_of(x)));
  i = std::min(i, n - 2);
  // index_of may be off by one through rounding
  while (i > 0 && x < m_grid.r(i))
    --i;
  while (i + 2 < n && x >= m_grid.r(i + 1))
    ++i;
  h = m_grid.r(i + 1) - m_grid.r(i);
  theta = (x - m_grid.r(i)) / h;
  return i;
}

double TFUniversalSolution::phi_at(double x) const {
  if (x < 0.0)
    throw DomainError("phi_at: x must be non-negative");
  if (x < m_grid.r_min()) {
    const double sx = std::sqrt(x);
    return 1.0 + m_slope0 * x + (4.0 / 3.0) * x * sx +
           0.4 * m_slope0 * x * x * sx;
  }
  const auto n = m_grid.size();
  if (x > m_grid.r_max()) {
    const double p = -m_grid.r_max() * m_dphi[n - 1] / m_phi[n - 1];
    return m_phi[n - 1] * std::pow(m_grid.r_max() / x, p);
  }
  double theta, h;
  const auto i = locate(x, theta, h);
  return hermite(m_phi[i], m_phi[i + 1], h * m_dphi[i], h * m_dphi[i + 1],
                 theta);
}

double TFUniversalSolution::dphi_at(double x) const {
  if (x < 0.0)
    throw DomainError("dphi_at: x must be non-negative");
  if (x < m_grid.r_min()) {
    const double sx = std::sqrt(x);
    return m_slope0 + 2.0 * sx + m_slope0 * x * sx;
  }
  const auto n = m_grid.size();
  if (x > m_grid.r_max()) {
    const double p = -m_grid.r_max() * m_dphi[n - 1] / m_phi[n - 1];
    return -p * phi_at(x) / x;
  }
  double theta, h;
  const auto i = locate(x, theta, h);
  auto dd = [&](std::size_t k) {
    const double p = m_phi[k];
    return p * std::sqrt(p / m_grid.r(k));
  };
  return hermite(m_dphi[i], m_dphi[i + 1], h * dd(i), h * dd(i + 1), theta);
}

double TFUniversalSolution::d2phi_at(double x) const {
  const double p = phi_at(x);
  return p * std::sqrt(p / x);
}

double TFUniversalSolution::ode_residual() const {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < m_grid.size(); ++i) {
    const double hm = m_grid.r(i) - m_grid.r(i - 1);
    const double hp = m_grid.r(i + 1) - m_grid.r(i);
    const double fd = (hm * hm * m_dphi[i + 1] - hp * hp * m_dphi[i - 1] +
                       (hp * hp - hm * hm) * m_dphi[i]) /
                      (hm * hp * (hm + hp));
    const double exact = m_phi[i] * std::sqrt(m_phi[i] / m_grid.r(i));
    worst = std::max(worst, std::abs(fd - exact) / exact);
  }
  return worst;
}

//==============================================================================
double collocation_slope0(double tolerance) {
  if (!(tolerance > 1e-12 && tolerance < 1e-3))
    throw DomainError("collocation_slope0: tolerance must lie in (1e-12, 1e-3)");
  const double lam = 0.5 * (std::sqrt(73.0) - 7.0);
  const double C = -13.0;
  const double X = 1e12;
  const double phi0 = 144.0 / (X * X * X) * (1.0 + C * std::pow(X, -lam));
  const double dphi0 =
      144.0 * (-3.0 * std::pow(X, -4.0) + C * (-3.0 - lam) * std::pow(X, -4.0 - lam));
  const double h = std::clamp(0.2 * std::pow(tolerance, 0.25), 2e-4, 2e-2);

  // s = ln x, state (phi, w = x phi')
  const ode::Rhs2 rhs_s = [](double s, const State2 &y) -> State2 {
    const double x = std::exp(s);
    const double p = std::max(y[0], 0.0);
    return {y[1], y[1] + x * std::sqrt(x) * p * std::sqrt(p)};
  };
  const double s0 = std::log(X);
  const auto nA = static_cast<std::size_t>(std::ceil(s0 / h));
  const double hA = -s0 / static_cast<double>(nA);
  State2 y{phi0, X * dphi0};
  for (std::size_t k = 0; k < nA; ++k)
    y = ode::gauss_collocation_step(rhs_s, s0 + hA * static_cast<double>(k), y,
                                    hA);

  const auto nB = static_cast<std::size_t>(std::ceil(1.0 / h));
  const double hB = -1.0 / static_cast<double>(nB);
  const ode::Rhs2 rhs_b = rhs_t;
  for (std::size_t k = 0; k < nB; ++k)
    y = ode::gauss_collocation_step(rhs_b, 1.0 + hB * static_cast<double>(k), y,
                                    hB);
  const double A = y[0], S = y[1];
  if (!(A > 0.0) || !std::isfinite(S))
    throw NumericalError("collocation_slope0: inward integration failed");
  return S * std::pow(A, -4.0 / 3.0);
}

//==============================================================================
TFUniversalSolution solve_universal_tf(double tolerance,
                                       const UniversalGridSpec &spec) {
  if (!(tolerance > 1e-12 && tolerance < 1e-3))
    throw DomainError("solve_universal_tf: tolerance must lie in (1e-12, 1e-3)");
  const LogGrid grid(spec.x_min, spec.x_max, spec.nodes);
  const double x_far = 1e3 * spec.x_max;
  const auto opt = shooting_options(tolerance);

  Segment seg = bisect(0.0, 1.0, -1.7, -1.5, x_far, opt);
  const double slope0 = seg.u0;
  {
    auto fine = opt;
    fine.rtol = std::max(opt.rtol * 0.1, 1e-15);
    const double refined = bisect(0.0, 1.0, -1.7, -1.5, x_far, fine).u0;
    if (std::abs(refined - slope0) > tolerance)
      throw ConvergenceError(
          fmt::format("TF shooting: slope0 not stable to {} ({} vs {})",
                      tolerance, slope0, refined),
          std::min(slope0, refined), std::max(slope0, refined));
  }

  const auto n = grid.size();
  std::vector<double> phi(n), dphi(n);
  std::size_t next = 0;
  for (std::size_t k = 0;; ++k) {
    if (k >= max_segments)
      throw NumericalError("TF shooting: outward continuation did not reach "
                           "the end of the grid");
    const double x_end = std::min(seg.x_trust, spec.x_max);
    double h = 0.0;
    double t = std::sqrt(seg.x0);
    State2 y{seg.phi0, seg.u0};
    while (next < n && grid.r(next) <= x_end) {
      const double tn = std::sqrt(grid.r(next));
      const auto r = ode::dormand_prince(rhs_t, t, y, tn, opt, h);
      t = r.t;
      y = r.y;
      phi[next] = y[0];
      dphi[next] = y[1];
      ++next;
    }
    if (next >= n)
      break;
    const auto r = ode::dormand_prince(rhs_t, t, y, std::sqrt(x_end), opt, h);
    // Re-shoot from x_end on phi'(x_end).
    const double u_ref = r.y[1];
    double lo = 2.0 * u_ref, hi = 0.5 * u_ref;
    for (int w = 0;
         w < 60 && classify(x_end, r.y[0], lo, x_far, opt).fate != Fate::crossed;
         ++w)
      lo *= 2.0;
    if (classify(x_end, r.y[0], hi, x_far, opt).fate != Fate::turned)
      hi = 0.0;
    const Segment s2 = bisect(x_end, r.y[0], lo, hi, x_far, opt);
    if (!(s2.x_trust > x_end))
      throw NumericalError("TF shooting: outward continuation stalled");
    seg = s2;
  }

  const double check = collocation_slope0(tolerance);
  if (std::abs(check - slope0) > 10.0 * tolerance)
    throw NumericalError(fmt::format(
        "TF solve: shooting slope0 {:.17g} and collocation slope0 {:.17g} "
        "disagree beyond 10 * tolerance",
        slope0, check));
  return TFUniversalSolution(grid, std::move(phi), std::move(dphi), slope0,
                             check, tolerance);
}

} // namespace hatom::tf
