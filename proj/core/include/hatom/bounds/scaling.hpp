#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hatom::bounds {

struct ScalingFit {
  std::string term;
  std::vector<double> z_grid;
  std::vector<double> values;
  double fitted_exponent{0.0};
  double claimed_exponent{0.0};
  //! Largest |ln value - (a + b ln Z)| over the points.
  double max_residual{0.0};
};

//! Least-squares slope of ln value against ln Z. Requires >= 3 points with
//! strictly increasing Z spanning >= 2 decades (unless `require_span` is
//! false) and positive values.
ScalingFit fit_exponent(const std::vector<std::pair<double, double>> &points,
                        std::string term = {}, double claimed = 0.0,
                        bool require_span = true);

} // namespace hatom::bounds
