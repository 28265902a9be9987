#include "hatom/check/invariants.hpp"
#include "hatom/bounds/lemmas.hpp"
#include "hatom/errors.hpp"
#include "hatom/hole/exchange_hole.hpp"
#include "hatom/kernels/relativistic.hpp"
#include "hatom/lower/semiclassical.hpp"
#include "hatom/numerics/random.hpp"
#include "hatom/phase_space/occupation.hpp"
#include "hatom/tf/atom.hpp"
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace hatom::check {

namespace {

class Recorder {
public:
  Recorder(std::string name, double tol) {
    m_r.name = std::move(name);
    m_r.tolerance = tol;
  }
  //! Records a deviation; a violation when it exceeds the tolerance.
  void deviation(double d) {
    ++m_r.evaluated;
    if (!std::isfinite(d) || d > m_r.tolerance)
      ++m_r.violations;
    if (!std::isfinite(d) || d > m_r.worst)
      m_r.worst = std::isfinite(d) ? d : std::numeric_limits<double>::infinity();
  }
  InvariantResult done() const { return m_r; }

private:
  InvariantResult m_r;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

std::vector<kernels::DispersionParams>
dispersions(const CheckOptions &opt) {
  std::vector<kernels::DispersionParams> out;
  for (double Z : opt.z_grid)
    for (double k : opt.kappas)
      out.push_back(kernels::DispersionParams::for_atom(Z, k));
  return out;
}

void kernel_checks(const CheckOptions &opt, std::vector<InvariantResult> &out) {
  const auto momenta = log_space(1e-6, 1e6, 241);
  Recorder unit("embedding unitarity m1^2 + m2^2 = 1", 1e-14);
  Recorder norm("normalization N_c >= sqrt(2) c^2", 0.0);
  Recorder gap("kinetic concavity gap >= 0", 0.0);
  Recorder w1b("kernel bound w1 <= 3 xi xi'/(2c^2) + (xi + xi')/c", 0.0);
  Recorder w2b("kernel bound w2 <= xi xi'/(2c^2)", 0.0);
  for (const auto &prm : dispersions(opt)) {
    const double c = prm.c;
    for (double p : momenta) {
      const double P = p * c;
      const auto m = kernels::embedding_multipliers(P, prm);
      unit.deviation(std::abs(m.m1 * m.m1 + m.m2 * m.m2 - 1.0));
      norm.deviation(std::max(
          0.0, std::sqrt(2.0) * c * c / kernels::normalization_factor(P, prm) - 1.0));
      gap.deviation(std::max(0.0, -kernels::kinetic_concavity_gap(P, prm)));
    }
    for (std::size_t i = 0; i < momenta.size(); i += 8)
      for (std::size_t j = 0; j < momenta.size(); j += 8) {
        const double a = momenta[i] * c, b = momenta[j] * c;
        const auto w = kernels::kernel_weights(a, b, prm);
        w1b.deviation(std::max(0.0, w.w1 / w.w1_bound - 1.0 - 1e-14));
        w2b.deviation(
            std::max(0.0, w.w2 / (a * b / (2.0 * c * c)) - 1.0 - 1e-14));
      }
  }
  out.push_back(unit.done());
  out.push_back(norm.done());
  out.push_back(gap.done());
  out.push_back(w1b.done());
  out.push_back(w2b.done());

  Recorder proj("4x4 projector identities", kernels::projector_tolerance);
  auto gen = rng::stream(opt.seed, 0);
  for (const auto &prm : dispersions(opt))
    for (int k = 0; k < 40; ++k) {
      const double mag = prm.c * std::pow(10.0, 8.0 * rng::uniform(gen) - 4.0);
      const auto d = rng::direction(gen);
      const auto rep = kernels::projector_identity_check(
          {mag * d[0], mag * d[1], mag * d[2]}, prm);
      proj.deviation(rep.max_deviation);
    }
  out.push_back(proj.done());
}

void tf_checks(const CheckOptions &opt, std::vector<InvariantResult> &out) {
  const auto &u = *opt.universal;
  Recorder slope("phi'(0) shooting vs collocation", 1e-8);
  slope.deviation(std::abs(u.slope0() - u.slope0_check()));
  out.push_back(slope.done());

  Recorder a0("gamma_TF rho^{2/3} = V pointwise", 1e-12);
  Recorder a1("rho <= (Z/gamma_TF)^{3/2} r^{-3/2}", 0.0);
  Recorder mass("\\int rho_TF = Z", 1e-6);
  Recorder scal("E_TF(Z) = E_TF(1) Z^{7/3}", 1e-6);
  Recorder closed("E_TF = (3/7) Z^2 phi'(0) / b", 1e-6);
  Recorder m0("M0 = \\int rho_TF", 1e-5);
  Recorder m2("M2 / 2 = TF kinetic energy", 1e-5);
  Recorder smear("\\int rho_delta = Z", 1e-5);
  const tf::TFAtom one(1.0, opt.universal);
  const double gam = tf::gamma_tf();
  for (double Z : opt.z_grid) {
    auto atom = std::make_shared<const tf::TFAtom>(Z, opt.universal);
    const auto &g = atom->grid();
    for (std::size_t i = 0; i < g.size(); i += 7) {
      const double r = g.r(i) * 1.0137;
      const double rho = atom->density(r), V = atom->potential(r);
      a0.deviation(rel(gam * std::cbrt(rho * rho), V));
      a1.deviation(
          std::max(0.0, rho / std::pow(Z / (gam * r), 1.5) - 1.0 - 1e-14));
    }
    mass.deviation(rel(atom->rho().integrate(), Z));
    scal.deviation(rel(atom->energy(), one.energy() * std::pow(Z, 7.0 / 3.0)));
    closed.deviation(rel(atom->energy(), atom->energy_closed_form()));
    const phase_space::PhaseSpaceOccupation occ(atom);
    m0.deviation(rel(phase_space::phase_space_moment(occ, 0),
                     atom->rho().integrate()));
    m2.deviation(rel(0.5 * phase_space::phase_space_moment(occ, 2),
                     atom->kinetic()));
    const auto sm =
        tf::smear_density(*atom, opt.delta, phase_space::default_shape());
    smear.deviation(rel(sm.rho_delta.integrate(), Z));
  }
  for (auto *r : {&a0, &a1, &mass, &scal, &closed, &m0, &m2, &smear})
    out.push_back(r->done());
}

void hole_checks(const CheckOptions &opt, std::vector<InvariantResult> &out) {
  Recorder mass("ball mass at hole radius = 1/2", 1e-6);
  Recorder nonneg("L >= 0", 0.0);
  Recorder a1("A1 <= ||f||_inf gamma_TF^{-3/2} Z", 0.0);
  Recorder a2("A2 <= Z / 2", 0.0);
  Recorder chain("L <= A1 + A2", 1e-9);
  Recorder fmono("f(t) decreasing on [1e-4, 1e4]", 0.0);
  for (double Z : opt.z_grid) {
    if (Z < 10.0)
      continue;
    const tf::TFAtom atom(Z, opt.universal);
    for (double s : log_space(1e-4, 1e2, 16)) {
      const double x = s * std::cbrt(1.0 / Z);
      const auto d = hole::a1_a2_decomposition(atom, x);
      mass.deviation(std::abs(hole::ball_mass(atom.rho(), x, d.R_hole) - 0.5));
      nonneg.deviation(std::max(0.0, -d.L));
      a1.deviation(std::max(0.0, d.A1 / hole::a1_cap(Z) - 1.0));
      a2.deviation(std::max(0.0, d.A2 / hole::a2_cap(Z) - 1.0));
      chain.deviation(std::max(0.0, (d.L - d.A1 - d.A2) / d.L));
    }
  }
  const auto t = log_space(1e-4, 1e4, 257);
  for (std::size_t i = 1; i < t.size(); ++i)
    fmono.deviation(
        std::max(0.0, hole::f_function(t[i]) - hole::f_function(t[i - 1])));
  for (auto *r : {&mass, &nonneg, &a1, &a2, &chain, &fmono})
    out.push_back(r->done());
}

void lower_checks(const CheckOptions &opt, std::vector<InvariantResult> &out) {
  Recorder neg("[t]_- = min(t, 0) = t - [t]_+", 0.0);
  auto gen = rng::stream(opt.seed, 1);
  for (int i = 0; i < 1000; ++i) {
    const double t = std::ldexp(rng::uniform(gen) - 0.5, 20 - 40 * (i % 2));
    const double m = lower::negative_part(t);
    const double plus = t > 0.0 ? t : 0.0;
    neg.deviation(std::max({0.0, m, std::abs(m - (t - plus)),
                            std::abs(m - std::min(t, 0.0))}));
  }
  out.push_back(neg.done());

  Recorder root("E_c(xi_max) - c^2 = V", 1e-10);
  for (const auto &prm : dispersions(opt))
    for (double V : log_space(1e-6, 1e6, 61)) {
      const double x = lower::xi_max(V, prm.c);
      root.deviation(rel(kernels::kinetic_energy(x, prm), V));
    }
  out.push_back(root.done());

  Recorder lemma3("lemma3 moment = sqrt(2/pi) (lemma1 + lemma2)", 1e-12);
  Recorder kappa_mono("moment bounds increase with kappa", 0.0);
  bounds::BoundContext ctx;
  ctx.universal = opt.universal;
  for (double Z : opt.z_grid) {
    if (Z < 10.0)
      continue;
    double prev1 = 0.0, prev2 = 0.0;
    for (double k : opt.kappas) {
      using bounds::Mode;
      const auto l1 = bounds::lemma1_term(ctx, Z, opt.delta, k, Mode::moment_bound);
      const auto l2 = bounds::lemma2_term(ctx, Z, opt.delta, k, Mode::moment_bound);
      const auto l3 = bounds::lemma3_term(ctx, Z, opt.delta, k, Mode::moment_bound);
      lemma3.deviation(
          rel(l3.value, std::sqrt(2.0 / std::numbers::pi) * (l1.value + l2.value)));
      kappa_mono.deviation(
          std::max({0.0, prev1 - l1.value, prev2 - l2.value}));
      prev1 = l1.value;
      prev2 = l2.value;
    }
  }
  out.push_back(lemma3.done());
  out.push_back(kappa_mono.done());
}
} // namespace

std::uint64_t CheckReport::violations() const {
  std::uint64_t v = 0;
  for (const auto &r : results)
    v += r.violations;
  return v;
}

std::size_t CheckReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(),
                    [](const auto &r) { return r.violations == 0; }));
}

CheckReport run_invariant_suite(const CheckOptions &opt) {
  if (!opt.universal)
    throw DomainError("run_invariant_suite: universal solution missing");
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport rep;
  kernel_checks(opt, rep.results);
  tf_checks(opt, rep.results);
  hole_checks(opt, rep.results);
  lower_checks(opt, rep.results);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

} // namespace hatom::check
