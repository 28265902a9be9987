#pragma once

#include "hatom/bounds/reduced_integrals.hpp"
#include "hatom/tf/universal.hpp"
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hatom::bounds {

enum class Mode { moment_bound, monte_carlo };
enum class TermId {
  lemma1,
  lemma2,
  lemma3,
  kinetic_error,
  hole_sup,
  total_upper
};

std::string_view to_string(Mode m);
std::string_view to_string(TermId t);
Mode parse_mode(std::string_view s);

//! One labelled summand of a report, with the power of Z it carries at
//! fixed kappa (the moments scale as M_k ~ Z^{1 + 2k/3}).
struct TermPart {
  std::string label;
  double value{0.0};
  double exponent{0.0};
};

struct BoundTermReport {
  TermId term{TermId::lemma1};
  double Z{0.0}, delta{0.0}, kappa{0.0};
  double value{0.0};
  Mode mode{Mode::moment_bound};
  double std_error{0.0};
  std::uint64_t samples{0};
  std::vector<TermPart> parts;
};

struct BoundContext {
  std::shared_ptr<const tf::TFUniversalSolution> universal;
  ReducedIntegrals reduced{default_reduced_integrals()};
  std::uint64_t seed{20240601};
  unsigned jobs{1};
  //! Constant in front of the Z^{5/2 - delta/2} coherent-state remainder.
  //! A placeholder: its value is not available here.
  double lieb_constant{1.0};
};

//! Phase-space moments M_0, M_1, M_2 of the TF atom at Z.
struct Moments {
  double M0, M1, M2;
};
Moments atom_moments(const BoundContext &ctx, double Z);

//! Z \int dOmega A \iint |F_a(xi)| |F_a(xi')| w2 / |xi - xi'|^2.
//! Moment form: Z / (2 c^2 R^3) [C_prod M0 + R C_sum M1 + R^2 C_one M2].
BoundTermReport lemma1_term(const BoundContext &ctx, double Z, double delta,
                            double kappa, Mode mode,
                            std::uint64_t mc_samples = 1000000);

//! The same integral with w1. Moment form from w1 <= 3 xi xi'/(2c^2) +
//! (xi + xi')/c:
//!   Z { 3/(2 c^2 R^3) [C_prod M0 + R C_sum M1 + R^2 C_one M2]
//!     + 1/(c R^2) [C_sum M0 + 2 R C_one M1] }.
BoundTermReport lemma2_term(const BoundContext &ctx, double Z, double delta,
                            double kappa, Mode mode,
                            std::uint64_t mc_samples = 1000000);

//! sqrt(2/pi) Z times the K = w1 + w2 integral; in moment form the sum of
//! the two preceding bounds times sqrt(2/pi).
BoundTermReport lemma3_term(const BoundContext &ctx, double Z, double delta,
                            double kappa, Mode mode,
                            std::uint64_t mc_samples = 1000000);

//! Z ||grad g_R||^2 = 11 Z^{1 + 2 delta}.
BoundTermReport kinetic_error_term(const BoundContext &ctx, double Z,
                                   double delta, double kappa);

//! E_TF + kinetic error + lemmas 1-3 (moment form) + lieb_constant
//! Z^{5/2 - delta/2}. Parts carry each summand, the remainder and the
//! remainder in units of Z^{20/9}.
BoundTermReport upper_bound_total(const BoundContext &ctx, double Z,
                                  double kappa, double delta);

//! Remainder (total - E_TF) of an upper_bound_total report.
double upper_remainder(const BoundTermReport &total);

} // namespace hatom::bounds
