#include "hatom/numerics/ode.hpp"
#include "hatom/errors.hpp"
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace hatom::ode {

namespace {
State2 axpy(const State2 &y, double h,
            std::initializer_list<std::pair<double, const State2 *>> terms) {
  State2 out = y;
  for (const auto &[c, k] : terms) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}
} // namespace

AdaptiveResult dormand_prince(const Rhs2 &f, double t0, State2 y0, double t1,
                              const AdaptiveOptions &opt, double &h_hint,
                              const StopPredicate &stop) {
  // Butcher tableau
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  AdaptiveResult res{t0, y0, false, 0};
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double h = std::min(std::abs(h_hint > 0 ? h_hint : opt.h_init),
                      std::abs(t1 - t0));
  if (h == 0.0)
    return res;
  double t = t0;
  State2 y = y0;
  State2 k1 = f(t, y);
  double err_prev = 1e-4;

  while (dir * (t1 - t) > 0.0) {
    if (res.steps++ > opt.max_steps)
      throw NumericalError("dormand_prince: step budget exhausted");
    bool last = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      last = true;
    }
    const double hs = dir * h;
    const State2 k2 = f(t + c2 * hs, axpy(y, hs, {{a21, &k1}}));
    const State2 k3 = f(t + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
    const State2 k4 =
        f(t + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State2 k5 = f(t + c5 * hs, axpy(y, hs,
                                          {{a51, &k1},
                                           {a52, &k2},
                                           {a53, &k3},
                                           {a54, &k4}}));
    const State2 k6 = f(t + hs, axpy(y, hs,
                                     {{a61, &k1},
                                      {a62, &k2},
                                      {a63, &k3},
                                      {a64, &k4},
                                      {a65, &k5}}));
    const State2 y5 = axpy(
        y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State2 k7 = f(t + hs, y5);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }

    if (std::isfinite(err) && err <= 1.0) {
      t = last ? t1 : t + hs;
      y = y5;
      k1 = k7;
      // PI controller
      const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                         std::pow(err_prev, 0.4 / 5.0);
      err_prev = std::max(err, 1e-4);
      if (!last)
        h_hint = h;
      h *= std::clamp(fac, 0.2, 5.0);
      if (stop && stop(t, y)) {
        res.stopped = true;
        break;
      }
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      if (!std::isfinite(err))
        h *= 0.1;
      if (h < opt.h_min * std::max(1.0, std::abs(t)))
        throw NumericalError(fmt::format(
            "dormand_prince: step size underflow at t = {:.17g}", t));
    }
  }
  res.t = t;
  res.y = y;
  return res;
}

State2 gauss_collocation_step(const Rhs2 &f, double t, const State2 &y,
                              double h) {
  // Two-stage Gauss-Legendre: c = 1/2 -+ sqrt(3)/6.
  const double s3 = std::sqrt(3.0);
  const double c1 = 0.5 - s3 / 6.0, c2 = 0.5 + s3 / 6.0;
  const double a11 = 0.25, a12 = 0.25 - s3 / 6.0;
  const double a21 = 0.25 + s3 / 6.0, a22 = 0.25;

  State2 k1 = f(t + c1 * h, y);
  State2 k2 = k1;
  for (int it = 0; it < 100; ++it) {
    const State2 y1 = axpy(y, h, {{a11, &k1}, {a12, &k2}});
    const State2 y2 = axpy(y, h, {{a21, &k1}, {a22, &k2}});
    const State2 n1 = f(t + c1 * h, y1);
    const State2 n2 = f(t + c2 * h, y2);
    double change = 0.0, scale = 0.0;
    for (int i = 0; i < 2; ++i) {
      change = std::max({change, std::abs(n1[i] - k1[i]),
                         std::abs(n2[i] - k2[i])});
      scale = std::max({scale, std::abs(n1[i]), std::abs(n2[i])});
    }
    k1 = n1;
    k2 = n2;
    if (change <= 1e-15 * scale + 1e-300)
      break;
  }
  return axpy(y, h, {{0.5, &k1}, {0.5, &k2}});
}

} // namespace hatom::ode
