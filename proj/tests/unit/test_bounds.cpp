#include "doctest.h"

#include "fixtures.hpp"
#include "hatom/bounds/lemmas.hpp"
#include "hatom/bounds/monte_carlo.hpp"
#include "hatom/bounds/reduced_integrals.hpp"
#include "hatom/bounds/scaling.hpp"
#include "hatom/errors.hpp"
#include "oracles.hpp"
#include <cmath>
#include <numbers>

using namespace hatom;
using namespace hatom::bounds;
using hatom::testing::atom;
using hatom::testing::rel_diff;
using hatom::testing::universal;

namespace {
BoundContext context() {
  BoundContext ctx;
  ctx.universal = universal();
  return ctx;
}
} // namespace

TEST_CASE("reduced integrals agree with nested adaptive quadrature") {
  const double cutoff = 30.0;
  const auto panels = reduced_integrals(cutoff, false);
  const auto one = [](double, double) { return 1.0; };
  const auto sum = [](double a, double b) { return a + b; };
  CHECK(rel_diff(panels.one, oracle::reduced_integral_direct(one, cutoff)) < 1e-7);
  CHECK(rel_diff(panels.sum, oracle::reduced_integral_direct(sum, cutoff)) < 1e-7);
  CHECK(rel_diff(reduced_integral(one, cutoff), panels.one) < 1e-13);
}

TEST_CASE("default reduced integrals are ordered and extrapolated") {
  const auto &C = default_reduced_integrals();
  CHECK(C.extrapolated);
  CHECK(C.one > 0.0);
  CHECK(C.sum > C.one);
  CHECK(C.prod > C.sum);
  const auto raw = reduced_integrals(400.0, false);
  CHECK(C.prod >= raw.prod);
  CHECK(rel_diff(C.prod, raw.prod) < 1e-3);
  CHECK_THROWS_AS(reduced_integrals(5.0), DomainError);
}

TEST_CASE("moment-form parts carry their exact exponents") {
  const auto ctx = context();
  const double delta = 5.0 / 9.0, kappa = 0.5;
  std::vector<std::vector<std::pair<double, double>>> parts(5);
  for (double Z : {10.0, 100.0, 1000.0, 10000.0}) {
    const auto r = lemma2_term(ctx, Z, delta, kappa, Mode::moment_bound);
    REQUIRE(r.parts.size() == 5);
    for (std::size_t k = 0; k < 5; ++k)
      parts[k].emplace_back(Z, r.parts[k].value);
  }
  const auto r = lemma2_term(ctx, 10.0, delta, kappa, Mode::moment_bound);
  for (std::size_t k = 0; k < 5; ++k) {
    const auto fit = fit_exponent(parts[k]);
    // moments scale exactly up to quadrature error
    CHECK(fit.fitted_exponent == doctest::Approx(r.parts[k].exponent).epsilon(1e-5));
  }
}

TEST_CASE("lemma 3 is sqrt(2/pi) times the sum of lemmas 1 and 2") {
  const auto ctx = context();
  for (double Z : {10.0, 1000.0}) {
    const double l1 = lemma1_term(ctx, Z, 5.0 / 9.0, 0.5, Mode::moment_bound).value;
    const double l2 = lemma2_term(ctx, Z, 5.0 / 9.0, 0.5, Mode::moment_bound).value;
    const double l3 = lemma3_term(ctx, Z, 5.0 / 9.0, 0.5, Mode::moment_bound).value;
    CHECK(l3 == doctest::Approx(std::sqrt(2.0 / std::numbers::pi) * (l1 + l2))
                    .epsilon(1e-13));
  }
}

TEST_CASE("kinetic error exponent is exactly 1 + 2 delta") {
  const auto ctx = context();
  std::vector<std::pair<double, double>> pts;
  for (double Z : {10.0, 100.0, 1000.0, 10000.0})
    pts.emplace_back(Z, kinetic_error_term(ctx, Z, 5.0 / 9.0, 0.5).value);
  CHECK(fit_exponent(pts).fitted_exponent ==
        doctest::Approx(19.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("bound terms are monotone in kappa") {
  const auto ctx = context();
  double prev = 0.0;
  for (double kappa : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double v = lemma3_term(ctx, 100.0, 5.0 / 9.0, kappa, Mode::moment_bound).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("Monte-Carlo estimates are reproducible and below the moment bound") {
  auto ctx = context();
  const auto a = lemma1_term(ctx, 10.0, 5.0 / 9.0, 0.5, Mode::monte_carlo, 50000);
  ctx.jobs = 3;
  const auto b = lemma1_term(ctx, 10.0, 5.0 / 9.0, 0.5, Mode::monte_carlo, 50000);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.samples == 50000);
  ctx.seed = 99;
  const auto c = lemma1_term(ctx, 10.0, 5.0 / 9.0, 0.5, Mode::monte_carlo, 50000);
  CHECK(c.value != a.value);
  CHECK(std::abs(c.value - a.value) < 5.0 * std::hypot(a.std_error, c.std_error));
  const auto m = lemma1_term(ctx, 10.0, 5.0 / 9.0, 0.5, Mode::moment_bound);
  CHECK(a.value <= m.value + 3.0 * a.std_error);
}

TEST_CASE("radial sampler inverts the enclosed charge") {
  const auto at = atom(20.0);
  const RadialSampler sample(*at);
  for (double u : {1e-9, 0.01, 0.5, 0.9, 0.999}) {
    const double r = sample(u);
    CHECK(at->enclosed_charge(r) / 20.0 == doctest::Approx(u).epsilon(1e-8));
  }
  CHECK_THROWS_AS(sample(1.0), DomainError);
}

TEST_CASE("upper bound total and remainder") {
  const auto ctx = context();
  const auto t = upper_bound_total(ctx, 100.0, 0.5, 5.0 / 9.0);
  const double e_tf = tf::TFAtom(100.0, universal()).energy();
  CHECK(t.value > e_tf);
  CHECK(upper_remainder(t) == doctest::Approx(t.value - e_tf).epsilon(1e-12));
  const auto l1 = lemma1_term(ctx, 100.0, 5.0 / 9.0, 0.5, Mode::moment_bound);
  CHECK_THROWS_AS(upper_remainder(l1), DomainError);
}

TEST_CASE("mode parsing and validation") {
  CHECK(parse_mode("mc") == Mode::monte_carlo);
  CHECK(parse_mode("moment") == Mode::moment_bound);
  CHECK(parse_mode("moment_bound") == Mode::moment_bound);
  CHECK_THROWS_AS(parse_mode("exact"), DomainError);
  const auto ctx = context();
  CHECK_THROWS_AS(lemma1_term(ctx, 10.0, 0.3, 0.5, Mode::moment_bound), DomainError);
  CHECK_THROWS_AS(lemma1_term(ctx, 10.0, 0.5, 0.95, Mode::moment_bound), DomainError);
  CHECK_THROWS_AS(lemma1_term(ctx, -10.0, 0.5, 0.5, Mode::moment_bound), DomainError);
}
