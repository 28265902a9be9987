#include "hatom/bounds/scaling.hpp"
#include "hatom/errors.hpp"
#include <algorithm>
#include <cmath>

namespace hatom::bounds {

ScalingFit fit_exponent(const std::vector<std::pair<double, double>> &points,
                        std::string term, double claimed, bool require_span) {
  if (points.size() < 3)
    throw DomainError("fit_exponent: need at least 3 points");
  ScalingFit fit;
  fit.term = std::move(term);
  fit.claimed_exponent = claimed;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [z, v] = points[i];
    if (!(z > 0.0) || !(v > 0.0) || !std::isfinite(v))
      throw DomainError("fit_exponent: Z and values must be positive");
    if (i > 0 && !(z > points[i - 1].first))
      throw DomainError("fit_exponent: Z grid must be strictly increasing");
    fit.z_grid.push_back(z);
    fit.values.push_back(v);
  }
  if (require_span && fit.z_grid.back() < 100.0 * fit.z_grid.front())
    throw DomainError("fit_exponent: Z grid must span at least 2 decades");

  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sx += std::log(fit.z_grid[i]);
    sy += std::log(fit.values[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = std::log(fit.z_grid[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(fit.values[i]) - my);
  }
  fit.fitted_exponent = sxy / sxx;
  const double a = my - fit.fitted_exponent * mx;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = std::log(fit.values[i]) -
                     (a + fit.fitted_exponent * std::log(fit.z_grid[i]));
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  return fit;
}

} // namespace hatom::bounds
