#include "catpursuit/growth.hpp"

#include "catpursuit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace catpursuit {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::Fit, "fit abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += e * e;
  }
  fit.slope_se = x.size() > 2 ? std::sqrt(ss / (n - 2.0) / sxx) : 0.0;
  return fit;
}

std::size_t tail_start(std::size_t n, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorKind::Configuration, "tail_fraction must lie in (0, 1]");
  }
  const auto keep = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  return n - std::min(keep, n);
}

}  // namespace

GrowthFit fit_growth_exponent(std::span<const double> t, std::span<const double> y, double tail_fraction) {
  if (t.size() != y.size()) throw Error(ErrorKind::Fit, "t and y differ in length");
  const std::size_t first = tail_start(t.size(), tail_fraction);
  if (t.size() - first < 10) {
    throw Error(ErrorKind::Fit, "need at least 10 tail points, have " + std::to_string(t.size() - first));
  }
  std::vector<double> lx, ly;
  lx.reserve(t.size() - first);
  ly.reserve(t.size() - first);
  for (std::size_t i = first; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(y[i] > 0.0)) {
      throw Error(ErrorKind::Fit, "nonpositive value at sample " + std::to_string(i));
    }
    lx.push_back(std::log(t[i]));
    ly.push_back(std::log(y[i]));
  }
  const LineFit fit = least_squares(lx, ly);
  return {fit.slope, 2.0 * fit.slope_se, fit.intercept, lx.size()};
}

double tail_slope(std::span<const double> x, std::span<const double> y, double tail_fraction) {
  if (x.size() != y.size()) throw Error(ErrorKind::Fit, "x and y differ in length");
  const std::size_t first = tail_start(x.size(), tail_fraction);
  if (x.size() - first < 2) throw Error(ErrorKind::InsufficientData, "need two tail points for a slope");
  return least_squares({x.begin() + static_cast<std::ptrdiff_t>(first), x.end()},
                       {y.begin() + static_cast<std::ptrdiff_t>(first), y.end()})
      .slope;
}

}  // namespace catpursuit
