#pragma once

#include "hatom/tf/atom.hpp"
#include "hatom/tf/universal.hpp"
#include <memory>

namespace hatom::testing {

//! One universal TF solution per test binary.
inline std::shared_ptr<const tf::TFUniversalSolution> universal() {
  static const auto sol =
      std::make_shared<const tf::TFUniversalSolution>(tf::solve_universal_tf());
  return sol;
}

inline std::shared_ptr<const tf::TFAtom> atom(double Z) {
  return std::make_shared<const tf::TFAtom>(Z, universal());
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

} // namespace hatom::testing
