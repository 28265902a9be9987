#include "oracles.hpp"

#include "hatom/phase_space/shape.hpp"
#include "hatom/tf/atom.hpp"
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace hatom::oracle {

namespace {
constexpr double pi = std::numbers::pi;

// Thomas algorithm; sub[i] multiplies x[i-1], sup[i] multiplies x[i+1].
std::vector<double> solve_tridiagonal(const std::vector<double> &sub,
                                      const std::vector<double> &diag,
                                      const std::vector<double> &sup,
                                      const std::vector<double> &rhs) {
  const std::size_t n = diag.size();
  std::vector<double> cp(n), dp(n), x(n);
  cp[0] = sup[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - sub[i] * cp[i - 1];
    cp[i] = sup[i] / m;
    dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / m;
  }
  x[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    x[i] = dp[i] - cp[i] * x[i + 1];
  return x;
}
} // namespace

//==============================================================================
FunctionalMinimum tf_functional_minimum(double Z, std::size_t nodes) {
  if (nodes % 2 == 0)
    ++nodes;
  const double gam = 0.5 * std::pow(3.0 * pi * pi, 2.0 / 3.0);
  const double b = 0.5 * std::pow(0.75 * pi, 2.0 / 3.0) / std::cbrt(Z);
  const double u0 = std::log(1e-12 * b), u1 = std::log(1e4 * b);
  const double h = (u1 - u0) / static_cast<double>(nodes - 1);
  const std::size_t n = nodes;

  // Unknown w = r (Z/r - U[rho]); rho = (w / (gamma r))_+^{3/2}. The
  // discrete functional is stationary where w'' = 4 pi r rho on the u = ln r
  // grid (central differences), with w = Z at the core and the neutral
  // r^-3 decay at the outer edge.
  std::vector<double> r(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = std::exp(u0 + h * static_cast<double>(i));
    const double x = r[i] / b;
    w[i] = Z / ((1.0 + 0.53625 * x) * (1.0 + 0.53625 * x));
  }
  auto rho = [&](std::size_t i) {
    const double t = std::max(w[i], 0.0) / (r[i] * gam);
    return t * std::sqrt(t);
  };

  std::vector<double> sub(n), diag(n), sup(n), rhs(n);
  int it = 0;
  for (; it < 200; ++it) {
    sub[0] = 0.0;
    diag[0] = 1.0;
    sup[0] = 0.0;
    rhs[0] = Z - w[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double e2 = r[i] * r[i] * 4.0 * pi * r[i];
      const double src = e2 * rho(i);
      const double dsrc = w[i] > 0.0 ? 1.5 * src / w[i] : 0.0;
      sub[i] = 1.0 / (h * h) + 0.5 / h;
      sup[i] = 1.0 / (h * h) - 0.5 / h;
      diag[i] = -2.0 / (h * h) - dsrc;
      rhs[i] = -((w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h) -
                 (w[i + 1] - w[i - 1]) / (2.0 * h) - src);
    }
    sub[n - 1] = 1.5 - 1.0 / h;
    diag[n - 1] = 1.5 + 1.0 / h;
    sup[n - 1] = 0.0;
    rhs[n - 1] = -((w[n - 1] - w[n - 2]) / h + 1.5 * (w[n - 1] + w[n - 2]));
    const auto dw = solve_tridiagonal(sub, diag, sup, rhs);
    double step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] += dw[i];
      step = std::max(step, std::abs(dw[i]) / Z);
    }
    if (step < 1e-14)
      break;
  }
  if (it == 200)
    throw std::runtime_error("tf_functional_minimum: Newton did not converge");

  // Simpson in u plus the analytic r^{-3/2} core contributions.
  double K = 0.0, A = 0.0, D = 0.0, M = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double p = rho(i), vol = 4.0 * pi * r[i] * r[i] * r[i];
    K += wt * std::pow(p, 5.0 / 3.0) * vol;
    A += wt * p * vol / r[i];
    D += wt * p * vol * (Z - w[i]) / r[i];
    M += wt * p * vol;
  }
  const double core = 8.0 * pi * std::sqrt(r[0]);
  K = 0.6 * gam * (K * h / 3.0 + core * std::pow(Z / gam, 2.5));
  A = Z * (A * h / 3.0 + core * std::pow(Z / gam, 1.5));
  D = 0.5 * D * h / 3.0;
  M = M * h / 3.0;
  return {K - A + D, M, static_cast<double>(it + 1)};
}

//==============================================================================
namespace {
using mp = boost::multiprecision::cpp_bin_float_50;

mp m1_mp(double p, double c) {
  const mp P = p, C = c;
  const mp E = sqrt(C * C * P * P + C * C * C * C);
  return (E + C * C) / sqrt(2 * E * (E + C * C));
}
mp m2_mp(double p, double c) {
  const mp P = p, C = c;
  const mp E = sqrt(C * C * P * P + C * C * C * C);
  return C * P / sqrt(2 * E * (E + C * C));
}
} // namespace

double w1_high_precision(double xi, double xi_prime, double c) {
  const mp v = abs(1 - m1_mp(xi, c) * m1_mp(xi_prime, c));
  return v.convert_to<double>();
}

double w2_high_precision(double xi, double xi_prime, double c) {
  return (m2_mp(xi, c) * m2_mp(xi_prime, c)).convert_to<double>();
}

//==============================================================================
ProjectorComparison compare_projectors(const std::array<double, 3> &xi,
                                       const kernels::DispersionParams &prm) {
  using M4 = Eigen::Matrix4cd;
  auto load = [](const kernels::Matrix4 &a) {
    M4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m(i, j) = a[4 * i + j];
    return m;
  };
  const M4 D0 = load(kernels::dirac_matrix(xi, prm));
  const Eigen::SelfAdjointEigenSolver<M4> es(D0);
  const double p = std::hypot(xi[0], xi[1], xi[2]);
  const double E = std::sqrt(prm.c * prm.c * p * p + std::pow(prm.c, 4));
  ProjectorComparison out{0.0, 0.0, 0.0};
  M4 Lp = M4::Zero(), Lm = M4::Zero();
  for (int k = 0; k < 4; ++k) {
    const double lam = es.eigenvalues()(k);
    out.eigenvalue_error =
        std::max(out.eigenvalue_error, std::abs(std::abs(lam) - E) / E);
    const auto v = es.eigenvectors().col(k);
    (lam > 0.0 ? Lp : Lm) += v * v.adjoint();
  }
  const M4 Lp_lib = load(kernels::spectral_projector(xi, prm, +1));
  const M4 Lm_lib = load(kernels::spectral_projector(xi, prm, -1));
  out.projector_error = (Lp - Lp_lib).cwiseAbs().maxCoeff();
  out.negative_error = (Lm - Lm_lib).cwiseAbs().maxCoeff();
  return out;
}

//==============================================================================
double f_direct(double t) {
  const double X = 1.0 / t;
  boost::math::quadrature::tanh_sinh<double> ts(15);
  // Angular integral over mu = cos(angle to -e) for |y| = rho.
  auto angular = [&](double rho) {
    if (rho == 0.0)
      return 2.0;
    return ts.integrate(
        [&](double mu) {
          const double d2 = rho * rho + 1.0 + 2.0 * rho * mu;
          return std::pow(std::max(d2, 1e-300), -0.75);
        },
        -1.0, 1.0, 1e-13);
  };
  auto radial = [&](double rho) { return rho * angular(rho); };
  double total;
  if (X <= 1.0) {
    total = ts.integrate(radial, 0.0, X, 1e-12);
  } else {
    total = ts.integrate(radial, 0.0, 1.0, 1e-12) +
            ts.integrate(radial, 1.0, X, 1e-12);
  }
  return std::sqrt(t) * 2.0 * pi * total;
}

double ghat_direct(double xi) {
  const double c0 = std::sqrt(3465.0 / (512.0 * pi));
  auto g = [&](double r) {
    const double y = 1.0 - r * r;
    return c0 * y * y;
  };
  const double unitary = std::pow(2.0 * pi, -1.5);
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  if (xi == 0.0)
    return unitary * GK::integrate(
                         [&](double r) { return 4.0 * pi * r * r * g(r); },
                         0.0, 1.0, 20, 1e-14);
  return unitary * 4.0 * pi / xi *
         GK::integrate([&](double r) { return r * std::sin(xi * r) * g(r); },
                       0.0, 1.0, 20, 1e-14);
}

//==============================================================================
double reduced_integral_direct(const std::function<double(double, double)> &w,
                               double cutoff) {
  const phase_space::ShapeFunction g;
  auto f = [&](double eta) { return eta * std::abs(g.fourier_unitary(eta)); };
  std::vector<double> breaks{0.0};
  for (double z : phase_space::fourier_zeros(cutoff))
    breaks.push_back(z);
  breaks.push_back(cutoff);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  boost::math::quadrature::tanh_sinh<double> ts(12);
  auto inner = [&](double eta) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double a = breaks[k], b = breaks[k + 1];
      auto h = [&](double x) {
        if (x == eta)
          return 0.0;
        return f(x) * std::log((eta + x) / std::abs(eta - x)) * w(eta, x);
      };
      if (eta > a && eta < b)
        s += ts.integrate(h, a, eta, 1e-10) + ts.integrate(h, eta, b, 1e-10);
      else if (eta == a || eta == b)
        s += ts.integrate(h, a, b, 1e-10);
      else
        s += GK::integrate(h, a, b, 10, 1e-11);
    }
    return s;
  };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
    total += GK::integrate([&](double eta) { return f(eta) * inner(eta); },
                           breaks[k], breaks[k + 1], 6, 1e-9);
  return 8.0 * pi * pi * total;
}

//==============================================================================
namespace {
double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, v = 0.0;
  while (i > 0) {
    v += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return v;
}

// Plain long-double evaluation of the kernel weights.
double kernel_weight(bounds::Kernel k, double a, double b,
                     const kernels::DispersionParams &prm) {
  using ld = long double;
  const ld c = prm.c, c2 = c * c;
  auto m = [&](ld p, ld &m1, ld &m2) {
    const ld E = std::sqrt(c2 * p * p + c2 * c2);
    const ld N = std::sqrt(2 * E * (E + c2));
    m1 = (E + c2) / N;
    m2 = c * p / N;
  };
  ld m1a, m2a, m1b, m2b;
  m(a, m1a, m2a);
  m(b, m1b, m2b);
  const ld w1 = std::abs(1 - m1a * m1b), w2 = m2a * m2b;
  switch (k) {
  case bounds::Kernel::w1:
    return static_cast<double>(w1);
  case bounds::Kernel::w2:
    return static_cast<double>(w2);
  case bounds::Kernel::K:
    return static_cast<double>(w1 + w2);
  }
  return 0.0;
}
} // namespace

QuasiRandomEstimate
brute_force_kernel_integral(const phase_space::PhaseSpaceOccupation &occ,
                            double R, const kernels::DispersionParams &prm,
                            bounds::Kernel kernel, std::size_t points,
                            std::size_t shifts, std::uint64_t seed) {
  constexpr std::array<unsigned, 6> bases{2, 3, 5, 7, 11, 13};
  // |ghat|: a fine table of direct quadrature below eta = 5, and above it
  // the exact finite integration-by-parts sum for r (1 - r^2)^2 sin(eta r).
  const double split = 5.0;
  const std::size_t table_n = 20001;
  std::vector<double> table(table_n);
  for (std::size_t i = 0; i < table_n; ++i)
    table[i] = std::abs(ghat_direct(split * static_cast<double>(i) / (table_n - 1)));
  const double c0 = std::sqrt(3465.0 / (512.0 * pi));
  const double pref = std::pow(2.0 * pi, -1.5) * 4.0 * pi * c0;
  auto abs_ghat = [&](double eta) {
    if (eta < split) {
      const double s = eta / split * (table_n - 1);
      const std::size_t i = std::min(static_cast<std::size_t>(s), table_n - 2);
      const double th = s - static_cast<double>(i);
      return (1.0 - th) * table[i] + th * table[i + 1];
    }
    // derivatives of f = r - 2 r^3 + r^5 at r = 1 and r = 0
    constexpr std::array<double, 6> at1{0.0, 0.0, 8.0, 48.0, 120.0, 120.0};
    constexpr std::array<double, 6> at0{0.0, 1.0, 0.0, -12.0, 0.0, 120.0};
    const double sn = std::sin(eta), cs = std::cos(eta);
    // antiderivative of f sin(eta r) = sum_k f^(k) T_k / eta^(k+1), with
    // T_k cycling through -cos, sin, cos, -sin
    double v = 0.0, q = 1.0 / eta;
    for (int k = 0; k < 6; ++k) {
      double t1 = 0.0, t0 = 0.0;
      switch (k % 4) {
      case 0:
        t1 = -cs;
        t0 = -1.0;
        break;
      case 1:
        t1 = sn;
        break;
      case 2:
        t1 = cs;
        t0 = 1.0;
        break;
      default:
        t1 = -sn;
        break;
      }
      v += (at1[k] * t1 - at0[k] * t0) * q;
      q /= eta;
    }
    return std::abs(pref * v / eta);
  };

  std::vector<std::array<double, 6>> halton(points);
  for (std::size_t i = 0; i < points; ++i)
    for (int d = 0; d < 6; ++d)
      halton[i][d] = radical_inverse(i + 1, bases[d]);

  const auto &atom = occ.atom();
  const double p0 = std::sqrt(2.0 * atom.Z() / atom.b());
  const double lo = std::log(1e-5 * p0), hi = std::log(1e4 * p0);
  const int panels = 24;
  using GL = boost::math::quadrature::gauss<double, 8>;

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> totals(shifts, 0.0);
  for (std::size_t s = 0; s < shifts; ++s) {
    std::array<double, 6> shift;
    for (auto &v : shift)
      v = unif(gen);
    auto integrand = [&](double lp) {
      const double p = std::exp(lp);
      const double qs = occ.turning_radius(p);
      const double outer = 2.0 * std::pow(2.0 * pi, -3.0) * 4.0 * pi * p * p *
                           p * (4.0 * pi / 3.0) * qs * qs * qs;
      double J = 0.0;
      for (std::size_t i = 0; i < points; ++i) {
        std::array<double, 6> x;
        for (int d = 0; d < 6; ++d) {
          x[d] = halton[i][d] + shift[d];
          x[d] -= std::floor(x[d]);
        }
        const double ve = std::min(x[0], 1.0 - 1e-12);
        const double er = ve / (1.0 - ve);
        const double ce = 2.0 * x[1] - 1.0, pe = 2.0 * pi * x[2];
        const double vu = std::min(x[3], 1.0 - 1e-12);
        const double ur = vu / (1.0 - vu);
        const double cu = 2.0 * x[4] - 1.0, pu = 2.0 * pi * x[5];
        const double se = std::sqrt(1.0 - ce * ce), su = std::sqrt(1.0 - cu * cu);
        const std::array<double, 3> e{er * se * std::cos(pe),
                                      er * se * std::sin(pe), er * ce};
        const std::array<double, 3> e2{e[0] + ur * su * std::cos(pu),
                                       e[1] + ur * su * std::sin(pu),
                                       e[2] + ur * cu};
        const double g1 = abs_ghat(er);
        const double g2 = abs_ghat(std::hypot(e2[0], e2[1], e2[2]));
        if (g1 == 0.0 || g2 == 0.0)
          continue;
        // p along the z axis; the inner integral depends on |p| only.
        const double k1 = std::hypot(e[0] / R, e[1] / R, e[2] / R + p);
        const double k2 = std::hypot(e2[0] / R, e2[1] / R, e2[2] / R + p);
        // d^3 eta = 4 pi r^2 dr, d^3 u / |u|^2 = 4 pi dr, dr = dv / (1-v)^2
        const double jac_e = 4.0 * pi * er * er / ((1.0 - ve) * (1.0 - ve));
        const double jac_u = 4.0 * pi / ((1.0 - vu) * (1.0 - vu));
        J += g1 * g2 * kernel_weight(kernel, k1, k2, prm) * jac_e * jac_u;
      }
      return outer * J / static_cast<double>(points);
    };
    double total = 0.0;
    for (int pn = 0; pn < panels; ++pn)
      total += GL::integrate(integrand, lo + (hi - lo) * pn / panels,
                             lo + (hi - lo) * (pn + 1) / panels);
    totals[s] = total / R;
  }
  double mean = 0.0;
  for (double t : totals)
    mean += t;
  mean /= static_cast<double>(shifts);
  double var = 0.0;
  for (double t : totals)
    var += (t - mean) * (t - mean);
  var /= static_cast<double>(shifts - 1);
  return {mean, std::sqrt(var / static_cast<double>(shifts))};
}

} // namespace hatom::oracle
