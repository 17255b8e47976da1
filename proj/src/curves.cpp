#include "catpursuit/curves.hpp"

#include "catpursuit/errors.hpp"
#include "catpursuit/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace catpursuit {

namespace {

constexpr double pi = std::numbers::pi;

double sqr(double x) { return x * x; }

/// sin^2 of half the model angle opposite a, via the half-angle formulas.
/// Sides are already scaled to curvature 1 when `spherical`.
double half_angle_sin2(bool spherical, double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  auto f = [spherical](double x) { return spherical ? std::sin(x) : x; };
  const double num = std::max(0.0, f(s - b) * f(s - c));
  const double den = std::max(0.0, f(s) * f(s - a));
  const double half = std::atan2(std::sqrt(num), std::sqrt(den));
  return sqr(std::sin(half));
}

void check_model(double K, double a, double b, double c) {
  constexpr double slack = 1e-12;
  if (!(a >= 0.0 && b >= 0.0 && c >= 0.0)) throw Error(ErrorKind::ModelTriangle, "negative side length");
  if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
    throw Error(ErrorKind::ModelTriangle, "sides violate the triangle inequality");
  }
  if (K > 0.0 && (a + b + c) * std::sqrt(K) >= 2.0 * pi) {
    throw Error(ErrorKind::Perimeter, "model triangle perimeter reaches 2*pi/sqrt(K)");
  }
}

double tau_at(const std::vector<double>& t, const std::vector<double>& tau, double x) {
  const double slack = 1e-12 * std::max(1.0, std::abs(x));
  const auto it = std::upper_bound(t.begin(), t.end(), x + slack);
  if (it == t.begin()) return 0.0;
  return tau[static_cast<std::size_t>(it - t.begin()) - 1];
}

}  // namespace

PolygonalCurve::PolygonalCurve(const DomainSpec& spec, std::vector<Point> vertices, TieBreak tie_break)
    : spec_(spec), vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw Error(ErrorKind::Degenerate, "a polygonal curve needs two vertices");
  arclength_.assign(1, 0.0);
  paths_.reserve(vertices_.size() - 1);
  for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
    if (same_point(spec_, vertices_[k], vertices_[k + 1])) {
      throw Error(ErrorKind::Degenerate, "repeated vertex at index " + std::to_string(k + 1));
    }
    paths_.push_back(shortest_path(spec_, vertices_[k], vertices_[k + 1], tie_break));
    arclength_.push_back(arclength_.back() + paths_.back().length);
  }
}

PolygonalCurve PolygonalCurve::without_repeats(const DomainSpec& spec, const std::vector<Point>& vertices,
                                               TieBreak tie_break) {
  std::vector<Point> kept;
  for (const auto& v : vertices) {
    if (kept.empty() || !same_point(spec, kept.back(), v)) kept.push_back(v);
  }
  if (kept.size() >= 2) return PolygonalCurve(spec, std::move(kept), tie_break);
  PolygonalCurve single(spec);
  single.vertices_ = std::move(kept);
  single.arclength_.assign(1, 0.0);
  return single;
}

Point PolygonalCurve::point_at(double t) const {
  if (t < -tol::point || t > length() + tol::point) {
    throw Error(ErrorKind::Range, "arclength " + std::to_string(t) + " outside the curve");
  }
  if (paths_.empty()) return vertices_.front();
  auto it = std::upper_bound(arclength_.begin(), arclength_.end(), t);
  auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - arclength_.begin() - 1));
  k = std::min(k, paths_.size() - 1);
  const double s = std::clamp(t - arclength_[k], 0.0, paths_[k].length);
  return point_along(spec_, paths_[k], s);
}

std::vector<double> turning_angles(const PolygonalCurve& curve) {
  std::vector<double> out;
  const auto& paths = curve.paths();
  for (std::size_t k = 1; k < paths.size(); ++k) {
    const Direction in = direction_at(curve.domain(), paths[k - 1], PathEnd::Finish);
    const Direction back = opposite(in);
    const Direction fwd = direction_at(curve.domain(), paths[k], PathEnd::Start);
    out.push_back(pi - angle_between(back, fwd));
  }
  return out;
}

double total_rotation(const PolygonalCurve& curve) {
  double sum = 0.0;
  for (double x : turning_angles(curve)) sum += x;
  return sum;
}

CurveSeries tc_function(const PolygonalCurve& curve) {
  CurveSeries out;
  out.t = curve.arclength();
  out.tau.assign(out.t.size(), 0.0);
  const auto turns = turning_angles(curve);
  for (std::size_t k = 1; k < out.t.size(); ++k) {
    out.tau[k] = out.tau[k - 1] + (k - 1 < turns.size() ? turns[k - 1] : 0.0);
  }
  // The jump at the last vertex does not exist; tau there equals the last
  // interior value, which the loop above already reproduces.
  return out;
}

CurveSeries circumradius_function(const PolygonalCurve& curve, int samples_per_piece) {
  const DomainSpec& spec = curve.domain();
  const bool interior = spec.curvature_bound() > 0.0;
  if (interior && samples_per_piece < 1) {
    throw Error(ErrorKind::Configuration, "samples_per_piece must be at least 1 for K > 0");
  }
  CurveSeries out;
  const Point& origin = curve.vertices().front();
  double c = 0.0;
  auto record = [&](double t, const Point& x) {
    const double r = distance(spec, origin, x);
    c = std::max(c, r);
    out.t.push_back(t);
    out.r.push_back(r);
    out.c.push_back(c);
  };
  out.t.push_back(0.0);
  out.r.push_back(0.0);
  out.c.push_back(0.0);
  const auto& paths = curve.paths();
  const auto& arc = curve.arclength();
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (interior) {
      for (int j = 1; j <= samples_per_piece; ++j) {
        const double s = paths[k].length * j / (samples_per_piece + 1);
        record(arc[k] + s, point_along(spec, paths[k], s));
      }
    }
    record(arc[k + 1], curve.vertices()[k + 1]);
  }
  return out;
}

double comparison_angle(double K, double a, double b, double c) {
  check_model(K, a, b, c);
  if (b <= 0.0 || c <= 0.0) throw Error(ErrorKind::Degenerate, "comparison angle at a degenerate vertex");
  const bool spherical = K > 0.0;
  const double s = spherical ? std::sqrt(K) : 1.0;
  const double h = half_angle_sin2(spherical, a * s, b * s, c * s);
  return 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

double model_distance(double K, double a, double b, double c, double s, double u) {
  check_model(K, a, b, c);
  const double x = s * b;
  const double y = u * c;
  if (b <= 0.0 || c <= 0.0) return std::abs(x - y);
  if (K > 0.0) {
    const double k = std::sqrt(K);
    const double h = half_angle_sin2(true, a * k, b * k, c * k);
    // Haversine form of the spherical law of cosines.
    const double hav = sqr(std::sin(0.5 * (x - y) * k)) + std::sin(x * k) * std::sin(y * k) * h;
    return 2.0 * std::asin(std::sqrt(std::clamp(hav, 0.0, 1.0))) / k;
  }
  const double h = half_angle_sin2(false, a, b, c);
  return std::sqrt(std::max(0.0, sqr(x - y) + 4.0 * x * y * h));
}

ChordArcReport chord_arc_certificate(const PolygonalCurve& curve) {
  const DomainSpec& spec = curve.domain();
  if (spec.curvature_bound() > 0.0) {
    throw Error(ErrorKind::Unsupported, "chord-arc certificate needs a CAT(0) domain");
  }
  ChordArcReport rep;
  const auto turns = turning_angles(curve);
  const auto& arc = curve.arclength();
  const auto& verts = curve.vertices();
  rep.length = curve.length();
  for (double x : turns) rep.total_turn += x;
  if (curve.size() < 2) return rep;

  auto close = [&](std::size_t first, std::size_t last, double turn) {
    ChordArcSubarc sub;
    sub.first = first;
    sub.last = last;
    sub.turn = turn;
    sub.length = arc[last] - arc[first];
    sub.chord = distance(spec, verts[first], verts[last]);
    sub.ratio = sub.length / sub.chord;
    rep.subarcs.push_back(sub);
  };

  constexpr double quarter = 0.5 * pi;
  std::size_t first = 0;
  double acc = 0.0;
  for (std::size_t k = 1; k + 1 < verts.size(); ++k) {
    const double t = turns[k - 1];
    if (t > quarter + 1e-12 || acc + t > quarter + 1e-12) {
      close(first, k, acc);
      first = k;
      acc = 0.0;
    } else {
      acc += t;
    }
  }
  close(first, verts.size() - 1, acc);

  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for (const auto& sub : rep.subarcs) {
    rep.max_ratio = std::max(rep.max_ratio, sub.ratio);
    rep.sup_chord = std::max(rep.sup_chord, sub.chord);
    rep.worst_excess = std::max(rep.worst_excess, sub.length - std::numbers::sqrt2 * sub.chord);
  }
  const double pieces = rep.total_turn / quarter + 1.0;
  rep.aggregate_bound = pieces * std::numbers::sqrt2 * rep.sup_chord;
  rep.aggregate_applicable = static_cast<double>(rep.subarcs.size()) <= pieces + 1e-12;
  rep.aggregate_holds = rep.length <= rep.aggregate_bound + tol::geometric;
  return rep;
}

double spherical_length_bound(double tau, double d) {
  if (!(tau >= 0.0) || !(d >= 0.0) || !(tau + d < pi)) {
    throw Error(ErrorKind::Precondition, "spherical length bound needs tau, d >= 0 and tau + d < pi");
  }
  const double target = std::cos(d);
  const double ct = std::cos(tau);
  // cos^2 l - sin^2 l cos(tau) decreases from 1 to -cos(tau) on [0, pi/2].
  auto f = [ct](double l) { return sqr(std::cos(l)) - sqr(std::sin(l)) * ct; };
  double lo = 0.0, hi = 0.5 * pi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + hi;
}

double window_total_rotation(const std::vector<double>& t, const std::vector<double>& tau, double t0,
                             double width) {
  if (t.empty() || t.size() != tau.size()) throw Error(ErrorKind::IncompleteTrace, "empty or ragged tau series");
  const double lo = t0 - width, hi = t0 + width;
  if (width < 0.0 || lo < t.front() - tol::point || hi > t.back() + tol::point * std::max(1.0, t.back())) {
    throw Error(ErrorKind::Range, "window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                      "] outside the curve");
  }
  return tau_at(t, tau, hi) - tau_at(t, tau, lo);
}

double window_total_rotation(const PolygonalCurve& curve, double t0, double width) {
  const CurveSeries s = tc_function(curve);
  return window_total_rotation(s.t, s.tau, t0, width);
}

RayFit asymptotic_ray_fit(const PolygonalCurve& curve, double fit_from, double fit_to) {
  const DomainSpec& spec = curve.domain();
  if (spec.kind() != DomainKind::Euclidean && spec.kind() != DomainKind::ConvexRegion) {
    throw Error(ErrorKind::Unsupported, "ray fitting needs a Euclidean domain");
  }
  RayFit fit;
  const auto& verts = curve.vertices();
  fit.origin = verts.front().coords();
  const Eigen::VectorXd chord = verts.back().coords() - fit.origin;
  const double n = chord.norm();
  if (!(n > tol::point)) throw Error(ErrorKind::Fit, "curve has zero displacement");
  fit.direction = chord / n;
  std::vector<double> ft, fr;
  bool positive = true;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const Eigen::VectorXd x = verts[k].coords() - fit.origin;
    const double along = std::max(0.0, x.dot(fit.direction));
    const double res = (x - along * fit.direction).norm();
    const double t = curve.arclength()[k];
    fit.t.push_back(t);
    fit.residual.push_back(res);
    if (t >= fit_from && t <= fit_to && t > 0.0) {
      ft.push_back(t);
      fr.push_back(res);
      positive = positive && res > 0.0;
    }
  }
  if (positive && ft.size() >= 10) fit.exponent = fit_growth_exponent(ft, fr, 1.0);
  return fit;
}

}  // namespace catpursuit
