#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace hatom::ode {

using State2 = std::array<double, 2>;
using Rhs2 = std::function<State2(double, const State2 &)>;
using StopPredicate = std::function<bool(double, const State2 &)>;

struct AdaptiveOptions {
  double rtol{1e-13};
  double atol{1e-16};
  double h_init{1e-4};
  double h_min{1e-15};
  std::size_t max_steps{2'000'000};
};

struct AdaptiveResult {
  double t{};
  State2 y{};
  bool stopped{false};
  std::size_t steps{0};
};

//! Dormand-Prince 5(4) with PI step control. `h_hint` carries the last
//! accepted step in and out so node-to-node calls do not restart cold.
//! Throws NumericalError on step-size underflow or step budget exhaustion.
AdaptiveResult dormand_prince(const Rhs2 &f, double t0, State2 y0, double t1,
                              const AdaptiveOptions &opt, double &h_hint,
                              const StopPredicate &stop = {});

//! One step of the two-stage Gauss-Legendre collocation method (order 4).
State2 gauss_collocation_step(const Rhs2 &f, double t, const State2 &y,
                              double h);

} // namespace hatom::ode
