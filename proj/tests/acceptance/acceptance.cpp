#include "hatom/bounds/lemmas.hpp"
#include "hatom/bounds/monte_carlo.hpp"
#include "hatom/bounds/scaling.hpp"
#include "hatom/check/invariants.hpp"
#include "hatom/hole/correlation.hpp"
#include "hatom/hole/exchange_hole.hpp"
#include "hatom/kernels/relativistic.hpp"
#include "hatom/lower/semiclassical.hpp"
#include "hatom/phase_space/occupation.hpp"
#include "hatom/tf/atom.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace hatom;
namespace fs = std::filesystem;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double delta = 5.0 / 9.0;
constexpr double kappa = 0.5;

struct Outcome {
  bool pass;
  std::vector<std::string> details;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::shared_ptr<const tf::TFUniversalSolution> g_universal;

std::shared_ptr<const tf::TFAtom> make_atom(double Z) {
  return std::make_shared<const tf::TFAtom>(Z, g_universal);
}

//==============================================================================
Outcome tf_solver() {
  const auto t0 = Clock::now();
  g_universal =
      std::make_shared<const tf::TFUniversalSolution>(tf::solve_universal_tf());
  const double e1 = tf::TFAtom(1.0, g_universal).energy();
  const double secs = seconds_since(t0);
  const double s = g_universal->slope0(), s2 = g_universal->slope0_check();
  const auto ref = oracle::tf_functional_minimum(1.0, 20001);
  const double e_rel = rel(e1, ref.energy);
  const bool ok = std::abs(s + 1.588071) < 1e-5 && std::abs(s - s2) < 1e-8 &&
                  e_rel < 1e-4 && secs < 5.0;
  return {ok,
          {fmt::format("slope0 shooting {:.15f}, collocation {:.15f}, "
                       "|diff| {:.2e}",
                       s, s2, std::abs(s - s2)),
           fmt::format("E_TF(1) {:.12f}, functional minimum {:.12f}, rel {:.2e}",
                       e1, ref.energy, e_rel),
           fmt::format("solve + atom build {:.2f} s (limit 5 s)", secs)}};
}

Outcome identities() {
  check::CheckOptions opt;
  opt.universal = g_universal;
  const auto rep = check::run_invariant_suite(opt);
  Outcome o{rep.violations() == 0 && rep.seconds < 60.0, {}};
  o.details.push_back(fmt::format("{} invariants, {} passed, {} violations, "
                                  "{:.2f} s (limit 60 s)",
                                  rep.results.size(), rep.passed(),
                                  rep.violations(), rep.seconds));
  for (const auto &r : rep.results)
    if (r.violations > 0)
      o.details.push_back(fmt::format("violated: {} worst {:.3e} tol {:.1e}",
                                      r.name, r.worst, r.tolerance));
  return o;
}

Outcome electron_count() {
  Outcome o{true, {}};
  const phase_space::ShapeFunction shape;
  for (double Z : {1.0, 10.0, 100.0}) {
    const auto a = make_atom(Z);
    const phase_space::PhaseSpaceOccupation occ(a);
    const double M0 = phase_space::phase_space_moment(occ, 0);
    const double M2 = phase_space::phase_space_moment(occ, 2);
    const double n_tf = a->rho().integrate();
    const double n_d = tf::smear_density(*a, delta, shape).rho_delta.integrate();
    const double worst = std::max({rel(M0, n_tf), rel(M0, n_d), rel(n_tf, n_d)});
    const double kin = rel(0.5 * M2, a->kinetic());
    o.pass = o.pass && worst < 1e-5 && kin < 1e-5;
    o.details.push_back(fmt::format(
        "Z={:<5g} M0 {:.10f}  int rho_TF {:.10f}  int rho_delta {:.10f}  "
        "max rel {:.1e}  |M2/2 - K|/K {:.1e}",
        Z, M0, n_tf, n_d, worst, kin));
  }
  return o;
}

Outcome lemma_scaling() {
  const auto t0 = Clock::now();
  bounds::BoundContext ctx;
  ctx.universal = g_universal;
  const std::vector<double> zs{10.0, 100.0, 1000.0, 10000.0};
  std::vector<std::pair<double, double>> l1, l2, l3, kin, lead1, lead2;
  for (double Z : zs) {
    const auto a = bounds::lemma1_term(ctx, Z, delta, kappa, bounds::Mode::moment_bound);
    const auto b = bounds::lemma2_term(ctx, Z, delta, kappa, bounds::Mode::moment_bound);
    const auto c = bounds::lemma3_term(ctx, Z, delta, kappa, bounds::Mode::moment_bound);
    l1.emplace_back(Z, a.value);
    l2.emplace_back(Z, b.value);
    l3.emplace_back(Z, c.value);
    lead1.emplace_back(Z, a.parts.back().value);
    lead2.emplace_back(Z, b.parts.back().value);
    kin.emplace_back(Z, bounds::kinetic_error_term(ctx, Z, delta, kappa).value);
  }
  const double secs = seconds_since(t0);
  struct Row {
    const char *name;
    const std::vector<std::pair<double, double>> *pts;
    double claim, tol;
  };
  const std::vector<Row> rows{{"lemma1", &l1, 17.0 / 9.0, 0.05},
                              {"lemma2", &l2, 20.0 / 9.0, 0.05},
                              {"lemma3", &l3, 20.0 / 9.0, 0.05},
                              {"kinetic_error", &kin, 19.0 / 9.0, 1e-9}};
  Outcome o{secs < 600.0, {}};
  for (const auto &r : rows) {
    const auto fit = bounds::fit_exponent(*r.pts, r.name, r.claim);
    const bool ok = std::abs(fit.fitted_exponent - r.claim) <= r.tol;
    o.pass = o.pass && ok;
    std::string vals;
    for (const auto &p : *r.pts)
      vals += fmt::format(" {:.4e}", p.second);
    o.details.push_back(fmt::format("{:<13} fitted {:.4f}  claimed {:.4f} +- {:g}  {}  values{}",
                                    r.name, fit.fitted_exponent, r.claim, r.tol,
                                    ok ? "ok" : "OUT", vals));
  }
  o.details.push_back(fmt::format(
      "leading parts alone: lemma1 M2 part {:.4f}, lemma2 c^-1 R^-1 M1 part {:.4f}",
      bounds::fit_exponent(lead1).fitted_exponent,
      bounds::fit_exponent(lead2).fitted_exponent));
  o.details.push_back(fmt::format("runtime {:.2f} s (limit 600 s)", secs));
  return o;
}

Outcome mc_dominance() {
  const double Z = 10.0;
  bounds::BoundContext ctx;
  ctx.universal = g_universal;
  const auto atom = make_atom(Z);
  const phase_space::PhaseSpaceOccupation occ(atom);
  const auto prm = kernels::DispersionParams::for_atom(Z, kappa);
  const double R = std::pow(Z, -delta);
  struct Row {
    const char *name;
    bounds::TermId id;
    bounds::Kernel kernel;
    double pref;
  };
  const std::vector<Row> rows{
      {"lemma1", bounds::TermId::lemma1, bounds::Kernel::w2, 1.0},
      {"lemma2", bounds::TermId::lemma2, bounds::Kernel::w1, 1.0},
      {"lemma3", bounds::TermId::lemma3, bounds::Kernel::K, std::sqrt(2.0 / pi)}};
  Outcome o{true, {}};
  for (const auto &r : rows) {
    using Fn = bounds::BoundTermReport (*)(const bounds::BoundContext &, double,
                                           double, double, bounds::Mode,
                                           std::uint64_t);
    const Fn fn = r.id == bounds::TermId::lemma1   ? bounds::lemma1_term
                  : r.id == bounds::TermId::lemma2 ? bounds::lemma2_term
                                                   : bounds::lemma3_term;
    const auto mc = fn(ctx, Z, delta, kappa, bounds::Mode::monte_carlo, 1000000);
    const auto mb = fn(ctx, Z, delta, kappa, bounds::Mode::moment_bound, 0);
    const auto bf = oracle::brute_force_kernel_integral(occ, R, prm, r.kernel, 32768);
    const double bf_val = r.pref * Z * bf.mean, bf_err = r.pref * Z * bf.std_error;
    const double sigma = std::hypot(mc.std_error, bf_err);
    const bool below = mc.value <= mb.value + 3.0 * mc.std_error;
    const bool agree = std::abs(mc.value - bf_val) <= 3.0 * sigma;
    o.pass = o.pass && below && agree;
    o.details.push_back(fmt::format(
        "{}: MC {:.3f} +- {:.3f} ({} samples)  moment bound {:.3f} [{}]  "
        "quasi-random oracle {:.3f} +- {:.3f}  |diff|/sigma {:.2f} [{}]",
        r.name, mc.value, mc.std_error, mc.samples, mb.value,
        below ? "below" : "ABOVE", bf_val, bf_err,
        std::abs(mc.value - bf_val) / sigma, agree ? "agree" : "DISAGREE"));
  }
  return o;
}

Outcome appendix() {
  const std::vector<double> zs{10.0, 100.0, 1000.0};
  std::vector<std::pair<double, double>> tf_pts, d_pts;
  Outcome o{true, {}};
  std::size_t nodes = 0;
  double worst1 = 0.0, worst2 = 0.0;
  for (double Z : zs) {
    const auto a = make_atom(Z);
    const auto st = hole::tf_hole_sup(*a);
    const auto sd = hole::smeared_hole_sup(*a, delta);
    tf_pts.emplace_back(Z, st.sup);
    d_pts.emplace_back(Z, sd.sup);
    o.details.push_back(fmt::format("Z={:<5g} ||L_TF|| {:.6e}  ||L_delta|| {:.6e}",
                                    Z, st.sup, sd.sup));
    for (int i = 0; i <= 40; ++i) {
      const double s = a->b() * std::pow(10.0, -4.0 + 6.0 * i / 40.0);
      const auto d = hole::a1_a2_decomposition(*a, s);
      worst1 = std::max(worst1, d.A1 / hole::a1_cap(Z));
      worst2 = std::max(worst2, d.A2 / hole::a2_cap(Z));
      ++nodes;
    }
  }
  const auto ft = bounds::fit_exponent(tf_pts, "hole_sup_tf", 1.0);
  const auto fd = bounds::fit_exponent(d_pts, "hole_sup_delta", 1.0);
  const bool ok_tf = std::abs(ft.fitted_exponent - 1.0) <= 0.1;
  const bool ok_d = std::abs(fd.fitted_exponent - 1.0) <= 0.1;
  const bool caps = worst1 <= 1.0 && worst2 <= 1.0;

  const double small = hole::f_function(1e-8), large = hole::f_function(1e6);
  bool decreasing = true;
  double prev = hole::f_function(1e-6);
  for (double t = 2e-6; t < 1e5; t *= 2.0) {
    const double v = hole::f_function(t);
    decreasing = decreasing && v < prev;
    prev = v;
  }
  const bool limits = rel(small, 8.0 * pi) < 1e-3 &&
                      rel(large * std::pow(1e6, 1.5), 2.0 * pi) < 1e-6 &&
                      decreasing && hole::f_sup() <= hole::f_limit();
  o.pass = ok_tf && ok_d && caps && limits;
  o.details.push_back(fmt::format("||L_TF|| exponent {:.4f} [{}], ||L_delta|| exponent "
                                  "{:.4f} [{}] (target 1.0 +- 0.1)",
                                  ft.fitted_exponent, ok_tf ? "ok" : "OUT",
                                  fd.fitted_exponent, ok_d ? "ok" : "OUT"));
  o.details.push_back(fmt::format("{} scan nodes: max A1/cap {:.4f}, max A2/cap {:.4f} [{}]",
                                  nodes, worst1, worst2, caps ? "ok" : "EXCEEDED"));
  o.details.push_back(fmt::format(
      "f(1e-8) {:.8f} vs 8 pi {:.8f}; t^1.5 f(t) at 1e6 {:.8f} vs 2 pi; "
      "monotone {}; grid sup {:.6f} [{}]",
      small, 8.0 * pi, large * std::pow(1e6, 1.5), decreasing ? "yes" : "no",
      hole::f_sup(), limits ? "ok" : "OUT"));
  return o;
}

Outcome correlation() {
  const hole::CorrelationChecker checker(make_atom(20.0), delta);
  const auto sw = hole::correlation_sweep(checker, 10000, 20, 20240601);
  return {sw.violations == 0,
          {fmt::format("{} configurations, N <= 20, Z = 20: {} violations "
                       "(min relative margin {:.4f}); with D(rho_delta) on the "
                       "right: {} violations",
                       sw.configurations, sw.violations, sw.min_margin,
                       sw.violations_all_delta)}};
}

Outcome sandwich() {
  bounds::BoundContext ctx;
  ctx.universal = g_universal;
  const auto st = lower::convergence_study(ctx, kappa, delta, {1e3, 1e4, 1e5});
  Outcome o{st.gaps_positive && st.upper_decreasing && st.lower_decreasing &&
                st.upper_fit.fitted_exponent <= -0.05,
            {}};
  for (const auto &r : st.rows)
    o.details.push_back(fmt::format("Z={:<7g} upper gap {:.6f}  lower gap {:.6f}",
                                    r.Z, r.upper_gap, r.lower_gap));
  o.details.push_back(fmt::format(
      "positive {}, upper decreasing {}, lower decreasing {}, upper-gap "
      "exponent {:.4f} (need <= -0.05), lower-gap exponent {:.4f}",
      st.gaps_positive, st.upper_decreasing, st.lower_decreasing,
      st.upper_fit.fitted_exponent, st.lower_fit.fitted_exponent));
  o.details.push_back("trend check at finite Z, not a reproduction of the "
                      "asymptotic statement");
  return o;
}

int run_cli(const std::string &args) {
  const std::string cmd =
      std::string(HATOM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility() {
  const auto root = fs::temp_directory_path() / "hatom_acceptance_repro";
  fs::remove_all(root);
  const std::vector<std::string> runs{
      "bounds-upper --mode mc --mc-samples 200000 --z-grid 10,100,1000 --seed 11",
      "bounds-upper --z-grid 10,100,1000 --format json",
      "hole-scan --z-grid 10,100,1000 --configurations 500 --seed 11",
      "bounds-lower --z-grid 100,1000,10000"};
  Outcome o{true, {}};
  std::size_t files = 0, identical = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = root / fmt::format("run{}_{}", k, rep);
      const int code = run_cli(fmt::format("--cache-dir {} --output-dir {} {}",
                                           (root / "cache").string(),
                                           dir.string(), runs[k]));
      if (code != 0) {
        o.pass = false;
        o.details.push_back(fmt::format("'{}' exited with {}", runs[k], code));
      }
    }
    const auto a = root / fmt::format("run{}_0", k);
    const auto b = root / fmt::format("run{}_1", k);
    if (!fs::exists(a))
      continue;
    for (const auto &e : fs::directory_iterator(a)) {
      ++files;
      const auto other = b / e.path().filename();
      if (fs::exists(other) && slurp(e.path()) == slurp(other))
        ++identical;
      else
        o.details.push_back(fmt::format("differs: {}", e.path().filename().string()));
    }
  }
  o.pass = o.pass && files > 0 && identical == files;
  o.details.push_back(fmt::format("{} commands run twice, {}/{} output files "
                                  "byte-identical",
                                  runs.size(), identical, files));
  return o;
}
} // namespace

int main(int argc, char **argv) {
  bool strict = false;
  std::string report_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--strict")
      strict = true;
    else if (a == "--report" && i + 1 < argc)
      report_path = argv[++i];
    else {
      std::cerr << "usage: hatom_acceptance [--strict] [--report FILE]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"TF solver", tf_solver},
      {"exact identities", identities},
      {"electron count", electron_count},
      {"lemma scaling", lemma_scaling},
      {"MC vs moment bound", mc_dominance},
      {"exchange hole", appendix},
      {"correlation inequality", correlation},
      {"sandwich convergence", sandwich},
      {"reproducibility", reproducibility}};

  std::ostringstream detail;
  std::ostringstream summary;
  int failed = 0, errors = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o{false, {}};
    bool threw = false;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      threw = true;
      o.details.push_back(std::string("error: ") + e.what());
    }
    const std::string line =
        fmt::format("criterion {} {:<4} {} ({:.1f} s)", i + 1,
                    threw ? "ERR" : (o.pass ? "PASS" : "FAIL"),
                    criteria[i].first, seconds_since(t0));
    std::cout << line << '\n';
    for (const auto &d : o.details)
      std::cout << "    " << d << '\n';
    std::cout.flush();
    summary << line << '\n';
    detail << line << '\n';
    for (const auto &d : o.details)
      detail << "    " << d << '\n';
    failed += !o.pass;
    errors += threw;
    if (i == 0 && !g_universal)
      break;
  }
  std::cout << "\n" << summary.str();
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed,
                           criteria.size());
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << detail.str() << "\n"
        << fmt::format("{} of {} criteria passed\n", criteria.size() - failed,
                       criteria.size());
  }
  if (errors > 0)
    return 3;
  return strict && failed > 0 ? 1 : 0;
}
