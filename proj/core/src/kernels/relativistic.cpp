#include "hatom/kernels/relativistic.hpp"
#include "hatom/errors.hpp"
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace hatom::kernels {

namespace {
void check_momentum(double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw DomainError("momentum magnitude must be finite and >= 0");
}
} // namespace

//==============================================================================
DispersionParams DispersionParams::make(double c, double kappa) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw DomainError("speed of light must be positive");
  if (!(kappa >= 0.0) || !(kappa < kappa_crit))
    throw DomainError("kappa must lie in [0, kappa_crit)");
  return {c, kappa};
}

DispersionParams DispersionParams::for_atom(double Z, double kappa) {
  if (!(Z > 0.0))
    throw DomainError("nuclear charge must be positive");
  if (!(kappa > 0.0) || !(kappa < kappa_crit))
    throw DomainError("kappa must lie in (0, kappa_crit)");
  return {Z / kappa, kappa};
}

//==============================================================================
double energy_dispersion(double p, const DispersionParams &prm) {
  check_momentum(p);
  const double c = prm.c;
  // c^2 sqrt(1 + (p/c)^2) avoids overflow of c^4 for large c
  return c * c * std::hypot(1.0, p / c);
}

double kinetic_energy(double p, const DispersionParams &prm) {
  const double E = energy_dispersion(p, prm);
  const double c2 = prm.c * prm.c;
  return c2 * p * p / (E + c2);
}

double normalization_factor(double p, const DispersionParams &prm) {
  const double E = energy_dispersion(p, prm);
  return std::sqrt(2.0 * E * (E + prm.c * prm.c));
}

EmbeddingMultipliers embedding_multipliers(double p,
                                           const DispersionParams &prm) {
  const double E = energy_dispersion(p, prm);
  const double c2 = prm.c * prm.c;
  const double N = std::sqrt(2.0 * E * (E + c2));
  return {(E + c2) / N, prm.c * p / N};
}

double kinetic_concavity_gap(double p, const DispersionParams &prm) {
  const double t = kinetic_energy(p, prm);
  // p^2/2 - c^2p^2/(E+c^2) = p^2 (E - c^2) / (2(E + c^2))
  const double E = energy_dispersion(p, prm);
  const double c2 = prm.c * prm.c;
  const double gap = 0.5 * p * p * t / (E + c2);
  return std::max(gap, 0.0);
}

KernelWeights kernel_weights(double xi, double xi_prime,
                             const DispersionParams &prm) {
  const auto [m1a, m2a] = embedding_multipliers(xi, prm);
  const auto [m1b, m2b] = embedding_multipliers(xi_prime, prm);
  const double a = m2a * m2a, b = m2b * m2b;
  // 1 - m1 m1' = (1 - (1-a)(1-b)) / (1 + m1 m1')
  const double w1 = (a + b - a * b) / (1.0 + m1a * m1b);
  const double w2 = m2a * m2b;
  const double c = prm.c;
  const double bound =
      1.5 * (xi / c) * (xi_prime / c) + (xi + xi_prime) / c;
  return {w1, w2, w1 + w2, bound};
}

//==============================================================================
namespace {
using M4 = Eigen::Matrix4cd;
using M2 = Eigen::Matrix2cd;

M4 build_dirac(const std::array<double, 3> &xi, const DispersionParams &prm) {
  using cd = std::complex<double>;
  for (double v : xi)
    if (!std::isfinite(v))
      throw DomainError("momentum components must be finite");
  const cd I{0.0, 1.0};
  M2 s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  const M2 sp = xi[0] * s1 + xi[1] * s2 + xi[2] * s3;
  const M2 id2 = M2::Identity();
  const double c = prm.c;
  M4 D0 = M4::Zero();
  D0.block<2, 2>(0, 0) = c * c * id2;
  D0.block<2, 2>(2, 2) = -c * c * id2;
  D0.block<2, 2>(0, 2) = c * sp;
  D0.block<2, 2>(2, 0) = c * sp;
  return D0;
}

double momentum_norm(const std::array<double, 3> &xi) {
  return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

Matrix4 to_array(const M4 &m) {
  Matrix4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[4 * i + j] = m(i, j);
  return out;
}
} // namespace

Matrix4 dirac_matrix(const std::array<double, 3> &xi,
                     const DispersionParams &prm) {
  return to_array(build_dirac(xi, prm));
}

Matrix4 spectral_projector(const std::array<double, 3> &xi,
                           const DispersionParams &prm, int sign) {
  const M4 D0 = build_dirac(xi, prm);
  const double E = energy_dispersion(momentum_norm(xi), prm);
  const double s = sign > 0 ? 1.0 : -1.0;
  return to_array(0.5 * (M4::Identity() + s * D0 / E));
}

ProjectorReport projector_identity_check(const std::array<double, 3> &xi,
                                         const DispersionParams &prm) {
  const M4 D0 = build_dirac(xi, prm);
  const M2 id2 = M2::Identity();
  const double E = energy_dispersion(momentum_norm(xi), prm);
  const M4 id4 = M4::Identity();
  const M4 Lp = 0.5 * (id4 + D0 / E);
  const M4 Lm = 0.5 * (id4 - D0 / E);

  M4 U = M4::Zero();
  U.block<2, 2>(0, 2) = id2;
  U.block<2, 2>(2, 0) = -id2;
  const M4 Uinv = U.inverse();

  auto maxabs = [](const M4 &m) { return m.cwiseAbs().maxCoeff(); };

  ProjectorReport r;
  r.conjugation = maxabs(Uinv * D0 * U + D0) / E;
  r.square = maxabs(D0 * D0 / (E * E) - id4);
  r.completeness = maxabs(Lp + Lm - id4);
  r.idempotency = std::max(maxabs(Lp * Lp - Lp), maxabs(Lm * Lm - Lm));
  r.swap = maxabs(Lm - Uinv * Lp * U);
  r.trace = std::abs(Lp.trace() - 2.0);
  const double a = -0.731; // arbitrary nonzero scalar for X = a * 1
  const M4 X = a * id4;
  r.spin_doubling = std::max(std::abs((Lp * X).trace() - 2.0 * a),
                             std::abs(((Uinv * Lp * U) * X).trace() - 2.0 * a)) /
                    std::abs(a);
  r.max_deviation = std::max({r.conjugation, r.square, r.completeness,
                              r.idempotency, r.swap, r.trace, r.spin_doubling});
  r.passed = r.max_deviation <= projector_tolerance;
  return r;
}

} // namespace hatom::kernels
