#pragma once

#include <cstddef>
#include <span>

namespace catpursuit {

struct GrowthFit {
  double exponent = 0.0;
  /// Two standard errors of the slope, from the regression residuals.
  double half_width = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;

  bool operator==(const GrowthFit&) const = default;
};

/// Least-squares slope of log y against log t over the last `tail_fraction`
/// of the samples. Needs at least 10 tail points, all strictly positive.
GrowthFit fit_growth_exponent(std::span<const double> t, std::span<const double> y, double tail_fraction = 0.5);

/// Least-squares slope of y against x over the last `tail_fraction` samples.
double tail_slope(std::span<const double> x, std::span<const double> y, double tail_fraction);

}  // namespace catpursuit
