#pragma once

#include "hatom/tf/universal.hpp"
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hatom::check {

struct InvariantResult {
  std::string name;
  std::uint64_t evaluated{0};
  std::uint64_t violations{0};
  double worst{0.0};     //!< largest measured deviation
  double tolerance{0.0}; //!< allowed deviation
};

struct CheckReport {
  std::vector<InvariantResult> results;
  double seconds{0.0};

  std::uint64_t violations() const;
  std::size_t passed() const;
};

struct CheckOptions {
  std::shared_ptr<const tf::TFUniversalSolution> universal;
  std::vector<double> z_grid{1.0, 10.0, 100.0, 1000.0};
  std::vector<double> kappas{0.1, 0.5, 0.9};
  double delta{5.0 / 9.0};
  std::uint64_t seed{20240601};
  unsigned jobs{1};
};

//! Exact identities and analytic inequalities of every module, each
//! evaluated on a deterministic sample.
CheckReport run_invariant_suite(const CheckOptions &opt);

} // namespace hatom::check
