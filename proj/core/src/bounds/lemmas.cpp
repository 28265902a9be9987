#include "hatom/bounds/lemmas.hpp"
#include "hatom/bounds/monte_carlo.hpp"
#include "hatom/errors.hpp"
#include "hatom/kernels/relativistic.hpp"
#include "hatom/phase_space/occupation.hpp"
#include "hatom/tf/atom.hpp"
#include <cmath>
#include <numbers>

namespace hatom::bounds {

namespace {
const double sqrt_2_over_pi = std::sqrt(2.0 / std::numbers::pi);

void validate(const BoundContext &ctx, double Z, double delta, double kappa) {
  if (!ctx.universal)
    throw DomainError("bound terms: universal TF solution missing");
  if (!(Z > 0.0) || !std::isfinite(Z))
    throw DomainError("bound terms: Z must be positive");
  if (!(delta > 1.0 / 3.0 && delta < 2.0 / 3.0))
    throw DomainError("bound terms: delta must lie in (1/3, 2/3)");
  if (!(kappa > 0.0 && kappa < kernels::kappa_crit))
    throw DomainError("bound terms: kappa must lie in (0, kappa_crit)");
}

struct Setup {
  double c, R;
};

Setup setup(double Z, double delta, double kappa) {
  return {kernels::DispersionParams::for_atom(Z, kappa).c,
          phase_space::default_shape().R() * std::pow(Z, -delta)};
}

BoundTermReport make_report(TermId id, double Z, double delta, double kappa,
                            Mode mode) {
  BoundTermReport r;
  r.term = id;
  r.Z = Z;
  r.delta = delta;
  r.kappa = kappa;
  r.mode = mode;
  return r;
}

double sum_parts(const BoundTermReport &r) {
  double s = 0.0;
  for (const auto &p : r.parts)
    s += p.value;
  return s;
}

void lemma1_parts(BoundTermReport &r, const BoundContext &ctx,
                  const Moments &m, double scale) {
  const auto &C = ctx.reduced;
  const auto [c, R] = setup(r.Z, r.delta, r.kappa);
  const double f = scale * r.Z / (2.0 * c * c * R * R * R);
  const double d = r.delta;
  r.parts.push_back({"c^-2 R^-3 M0", f * C.prod * m.M0, 3.0 * d});
  r.parts.push_back({"c^-2 R^-2 M1", f * R * C.sum * m.M1, 2.0 * d + 2.0 / 3.0});
  r.parts.push_back({"c^-2 R^-1 M2", f * R * R * C.one * m.M2, d + 4.0 / 3.0});
}

void lemma2_parts(BoundTermReport &r, const BoundContext &ctx,
                  const Moments &m, double scale) {
  const auto &C = ctx.reduced;
  const auto [c, R] = setup(r.Z, r.delta, r.kappa);
  const double f = scale * 1.5 * r.Z / (c * c * R * R * R);
  const double g = scale * r.Z / (c * R * R);
  const double d = r.delta;
  r.parts.push_back({"c^-2 R^-3 M0", f * C.prod * m.M0, 3.0 * d});
  r.parts.push_back({"c^-2 R^-2 M1", f * R * C.sum * m.M1, 2.0 * d + 2.0 / 3.0});
  r.parts.push_back({"c^-2 R^-1 M2", f * R * R * C.one * m.M2, d + 4.0 / 3.0});
  r.parts.push_back({"c^-1 R^-2 M0", g * C.sum * m.M0, 1.0 + 2.0 * d});
  r.parts.push_back({"c^-1 R^-1 M1", g * 2.0 * R * C.one * m.M1, d + 5.0 / 3.0});
}

BoundTermReport monte_carlo(const BoundContext &ctx, TermId id, Kernel k,
                            double pref, double Z, double delta, double kappa,
                            std::uint64_t samples) {
  auto atom = std::make_shared<const tf::TFAtom>(Z, ctx.universal);
  const phase_space::PhaseSpaceOccupation occ(atom);
  const double R = setup(Z, delta, kappa).R;
  const auto prm = kernels::DispersionParams::for_atom(Z, kappa);
  const auto est = mc_kernel_integral(occ, phase_space::ShapeFunction(R), prm,
                                      k, samples, ctx.seed, ctx.jobs);
  auto r = make_report(id, Z, delta, kappa, Mode::monte_carlo);
  r.value = pref * Z * est.mean;
  r.std_error = pref * Z * est.std_error;
  r.samples = est.samples;
  return r;
}
} // namespace

std::string_view to_string(Mode m) {
  return m == Mode::moment_bound ? "moment_bound" : "monte_carlo";
}

std::string_view to_string(TermId t) {
  switch (t) {
  case TermId::lemma1:
    return "lemma1";
  case TermId::lemma2:
    return "lemma2";
  case TermId::lemma3:
    return "lemma3";
  case TermId::kinetic_error:
    return "kinetic_error";
  case TermId::hole_sup:
    return "hole_sup";
  case TermId::total_upper:
    return "total_upper";
  }
  return "unknown";
}

Mode parse_mode(std::string_view s) {
  if (s == "moment_bound" || s == "moment")
    return Mode::moment_bound;
  if (s == "monte_carlo" || s == "mc")
    return Mode::monte_carlo;
  throw DomainError("unknown mode '" + std::string(s) + "'");
}

Moments atom_moments(const BoundContext &ctx, double Z) {
  if (!ctx.universal)
    throw DomainError("atom_moments: universal TF solution missing");
  auto atom = std::make_shared<const tf::TFAtom>(Z, ctx.universal);
  const phase_space::PhaseSpaceOccupation occ(atom);
  return {phase_space::phase_space_moment(occ, 0),
          phase_space::phase_space_moment(occ, 1),
          phase_space::phase_space_moment(occ, 2)};
}

BoundTermReport lemma1_term(const BoundContext &ctx, double Z, double delta,
                            double kappa, Mode mode, std::uint64_t mc_samples) {
  validate(ctx, Z, delta, kappa);
  if (mode == Mode::monte_carlo)
    return monte_carlo(ctx, TermId::lemma1, Kernel::w2, 1.0, Z, delta, kappa,
                       mc_samples);
  auto r = make_report(TermId::lemma1, Z, delta, kappa, mode);
  lemma1_parts(r, ctx, atom_moments(ctx, Z), 1.0);
  r.value = sum_parts(r);
  return r;
}

BoundTermReport lemma2_term(const BoundContext &ctx, double Z, double delta,
                            double kappa, Mode mode, std::uint64_t mc_samples) {
  validate(ctx, Z, delta, kappa);
  if (mode == Mode::monte_carlo)
    return monte_carlo(ctx, TermId::lemma2, Kernel::w1, 1.0, Z, delta, kappa,
                       mc_samples);
  auto r = make_report(TermId::lemma2, Z, delta, kappa, mode);
  lemma2_parts(r, ctx, atom_moments(ctx, Z), 1.0);
  r.value = sum_parts(r);
  return r;
}

BoundTermReport lemma3_term(const BoundContext &ctx, double Z, double delta,
                            double kappa, Mode mode, std::uint64_t mc_samples) {
  validate(ctx, Z, delta, kappa);
  if (mode == Mode::monte_carlo)
    return monte_carlo(ctx, TermId::lemma3, Kernel::K, sqrt_2_over_pi, Z,
                       delta, kappa, mc_samples);
  auto r = make_report(TermId::lemma3, Z, delta, kappa, mode);
  const Moments m = atom_moments(ctx, Z);
  lemma1_parts(r, ctx, m, sqrt_2_over_pi);
  for (auto &p : r.parts)
    p.label = "w2: " + p.label;
  const std::size_t n1 = r.parts.size();
  lemma2_parts(r, ctx, m, sqrt_2_over_pi);
  for (std::size_t i = n1; i < r.parts.size(); ++i)
    r.parts[i].label = "w1: " + r.parts[i].label;
  r.value = sum_parts(r);
  return r;
}

BoundTermReport kinetic_error_term(const BoundContext &ctx, double Z,
                                   double delta, double kappa) {
  validate(ctx, Z, delta, kappa);
  auto r = make_report(TermId::kinetic_error, Z, delta, kappa,
                       Mode::moment_bound);
  r.value = phase_space::kinetic_error_term(Z, phase_space::default_shape(),
                                            delta);
  r.parts.push_back({"Z ||grad g_R||^2", r.value, 1.0 + 2.0 * delta});
  return r;
}

BoundTermReport upper_bound_total(const BoundContext &ctx, double Z,
                                  double kappa, double delta) {
  validate(ctx, Z, delta, kappa);
  const tf::TFAtom atom(Z, ctx.universal);
  const auto kin = kinetic_error_term(ctx, Z, delta, kappa);
  const auto l1 = lemma1_term(ctx, Z, delta, kappa, Mode::moment_bound);
  const auto l2 = lemma2_term(ctx, Z, delta, kappa, Mode::moment_bound);
  const auto l3 = lemma3_term(ctx, Z, delta, kappa, Mode::moment_bound);
  const double lieb_exp = 2.5 - 0.5 * delta;
  const double lieb = ctx.lieb_constant * std::pow(Z, lieb_exp);

  auto r = make_report(TermId::total_upper, Z, delta, kappa,
                       Mode::moment_bound);
  r.parts.push_back({"E_TF", atom.energy(), 7.0 / 3.0});
  r.parts.push_back({"kinetic_error", kin.value, 1.0 + 2.0 * delta});
  r.parts.push_back({"lemma1", l1.value, delta + 4.0 / 3.0});
  r.parts.push_back({"lemma2", l2.value, delta + 5.0 / 3.0});
  r.parts.push_back({"lemma3", l3.value, delta + 5.0 / 3.0});
  r.parts.push_back({"lieb_remainder (placeholder constant)", lieb, lieb_exp});
  r.value = sum_parts(r);
  const double rem = r.value - atom.energy();
  r.parts.push_back({"remainder", rem, 0.0});
  r.parts.push_back({"remainder / Z^(20/9)", rem * std::pow(Z, -20.0 / 9.0),
                     0.0});
  return r;
}

double upper_remainder(const BoundTermReport &total) {
  if (total.term != TermId::total_upper)
    throw DomainError("upper_remainder: not a total_upper report");
  for (const auto &p : total.parts)
    if (p.label == "remainder")
      return p.value;
  throw DomainError("upper_remainder: report has no remainder part");
}

} // namespace hatom::bounds
