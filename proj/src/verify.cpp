#include "catpursuit/verify.hpp"

#include "catpursuit/errors.hpp"
#include "catpursuit/metric_tree.hpp"
#include "catpursuit/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace catpursuit {

namespace {

constexpr double pi = std::numbers::pi;

/// Tracks the largest violation and where it happened.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  std::optional<std::size_t> index;

  void offer(double v, std::size_t i) {
    if (v > value) {
      value = v;
      index = i;
    }
  }
};

CheckReport finish(std::string name, const Worst& w, double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  r.worst = std::max(0.0, w.value);
  r.index = w.index;
  r.pass = r.worst <= tolerance;
  return r;
}

void require_series(const PursuitTrace& tr) {
  const std::size_t n = tr.size();
  if (n == 0) throw Error(ErrorKind::IncompleteTrace, "trace has no separations");
  for (const auto* v : {&tr.alpha, &tr.alpha_tilde, &tr.beta, &tr.tau_p, &tr.tau_e, &tr.increment}) {
    if (v->size() != n) throw Error(ErrorKind::IncompleteTrace, "trace series length differs from separations");
  }
}

}  // namespace

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Capture: return "capture";
    case Outcome::Escape: return "escape";
    case Outcome::Undecided: return "undecided";
  }
  return "?";
}

CheckReport check_separation_monotone(const PursuitTrace& tr) {
  if (tr.size() == 0) throw Error(ErrorKind::IncompleteTrace, "trace has no separations");
  Worst w;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const double d = tr.separation[i] - tr.separation[i + 1];
    w.offer(-d, i);
    sum += d;
  }
  CheckReport r = finish("separation_monotone", w, tol::geometric);
  r.context["telescoping_residual"] = std::abs(sum - (tr.separation.front() - tr.separation.back()));
  return r;
}

CheckReport check_angle_sandwich(const PursuitTrace& tr) {
  require_series(tr);
  Worst w;
  double skipped = 0.0, checked = 0.0;
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const double a = tr.alpha[i], at = tr.alpha_tilde[i], b = tr.beta[i];
    if (!std::isfinite(a)) {
      skipped += 1.0;
      continue;
    }
    if (std::isfinite(b)) w.offer((pi - b) - a, i);
    if (std::isfinite(at)) {
      w.offer(a - at, i);
      checked += 1.0;
    } else {
      skipped += 1.0;
    }
  }
  CheckReport r = finish("angle_sandwich", w, tol::angle);
  r.context["model_checked"] = checked;
  r.context["skipped"] = skipped;
  return r;
}

CheckReport check_tc_relation(const PursuitTrace& tr) {
  require_series(tr);
  if (tr.curvature > 0.0) {
    throw Error(ErrorKind::Unsupported, "pursuer/evader total curvature relation is only checked for K = 0");
  }
  Worst w;
  for (std::size_t n = 0; n + 1 < tr.size(); ++n) w.offer(tr.tau_p[n + 1] - tr.tau_e[n] - pi, n);
  if (tr.size() == 1) w.offer(tr.tau_p[0] - pi, 0);
  return finish("tc_relation", w, tol::angle);
}

SqrtBoundReport sqrt_bound_report(const PursuitTrace& tr) {
  require_series(tr);
  const double K = tr.curvature;
  if (K < 0.0) throw Error(ErrorKind::Unsupported, "sqrt bound needs K >= 0");
  const double s = K > 0.0 ? std::sqrt(K) : 1.0;
  if (!(s * tr.separation.front() < pi)) {
    throw Error(ErrorKind::Hypothesis, "initial separation is not below pi/sqrt(K)");
  }
  if (tr.capture_step) throw Error(ErrorKind::Hypothesis, "the evader was captured");
  if (tr.size() < 2) throw Error(ErrorKind::InsufficientData, "no steps recorded");

  SqrtBoundReport rep;
  const std::size_t n = tr.size();
  const double D = s * tr.step;
  rep.l0 = s * tr.separation.front();
  rep.ln = s * tr.separation.back();
  rep.b = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    rep.b = std::min(rep.b, std::sin(s * tr.separation[i + 1]) * std::sin(s * tr.separation[i] - D));
  }
  const double drop = std::max(0.0, rep.l0 - rep.ln);
  rep.b_degenerate = !(rep.b > 1e-12);
  rep.c = rep.b_degenerate ? std::numeric_limits<double>::infinity() : std::sqrt(5.0 * drop / rep.b);
  rep.b_horizon = std::min(std::pow(std::sin(rep.l0), 2), std::pow(std::sin(rep.ln), 2));
  rep.c_horizon = rep.b_horizon > 0.0 ? std::sqrt(5.0 * drop / rep.b_horizon) : std::numeric_limits<double>::infinity();

  rep.tau_p = tr.tau_p;
  rep.margin.resize(n);
  Worst wm;
  for (std::size_t k = 0; k < n; ++k) {
    const double bound = drop > 0.0 ? rep.c * std::sqrt(static_cast<double>(k) * D) : 0.0;
    rep.margin[k] = bound - tr.tau_p[k];
    wm.offer(-rep.margin[k], k);
  }
  rep.worst_margin = -wm.value;
  rep.worst_margin_index = wm.index;

  Worst ws;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double at = tr.alpha_tilde[i];
    if (!std::isfinite(at)) continue;
    const double allowed = rep.b_degenerate ? std::numeric_limits<double>::infinity()
                                            : 5.0 * s * tr.increment[i] * std::sin(D) / rep.b;
    ws.offer(at * at - allowed, i);
  }
  rep.worst_step_excess = ws.index ? ws.value : 0.0;
  rep.worst_step_index = ws.index;
  return rep;
}

CheckReport check_sqrt_bound(const SqrtBoundReport& rep) {
  CheckReport r;
  r.name = "sqrt_bound";
  r.tolerance = tol::angle;
  const double margin_violation = std::max(0.0, -rep.worst_margin);
  const double step_violation = std::max(0.0, rep.worst_step_excess);
  r.worst = std::max(margin_violation, step_violation);
  r.index = margin_violation >= step_violation ? rep.worst_margin_index : rep.worst_step_index;
  r.pass = r.worst <= r.tolerance;
  r.context["B"] = rep.b;
  if (std::isfinite(rep.c)) r.context["C"] = rep.c;
  r.context["L0"] = rep.l0;
  r.context["LN"] = rep.ln;
  r.context["worst_margin"] = rep.worst_margin;
  r.context["worst_step_excess"] = rep.worst_step_excess;
  if (rep.b_degenerate) r.note = "B is numerically zero; the bound is vacuous";
  return r;
}

Classification capture_classifier(const PursuitTrace& tr) {
  require_series(tr);
  Classification c;
  c.l_final = tr.separation.back();
  if (tr.capture_step) {
    c.outcome = Outcome::Capture;
    c.capture_step = tr.capture_step;
    return c;
  }
  if (tr.size() < 100) throw Error(ErrorKind::InsufficientData, "need at least 100 positions to classify");
  std::vector<double> idx(tr.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<double>(k);
  c.tail_slope = tail_slope(idx, tr.separation, 0.1);
  c.outcome = (c.l_final > tr.step && c.tail_slope > -1e-8) ? Outcome::Escape : Outcome::Undecided;
  if (c.outcome != Outcome::Escape) return c;

  std::vector<double> t(tr.size() - 1);
  for (std::size_t k = 1; k < tr.size(); ++k) t[k - 1] = tr.time(k);
  auto fit = [&](const std::vector<double>& y) -> std::optional<GrowthFit> {
    if (y.size() != tr.size()) return std::nullopt;
    try {
      return fit_growth_exponent(t, std::span<const double>(y).subspan(1), 0.5);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  c.tau_p = fit(tr.tau_p);
  c.tau_e = fit(tr.tau_e);
  c.c_p = fit(tr.c_p);
  c.c_e = fit(tr.c_e);
  return c;
}

Point sample_point(const DomainSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (spec.kind()) {
    case DomainKind::Euclidean: {
      Eigen::VectorXd x(spec.dimension());
      for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = -5.0 + 10.0 * unit(rng);
      return Point(x);
    }
    case DomainKind::ConvexRegion: {
      if (spec.polygon().empty()) {
        const double r = spec.disk_radius() * std::sqrt(unit(rng));
        const double a = 2.0 * pi * unit(rng);
        return Point::xy(r * std::cos(a), r * std::sin(a));
      }
      Eigen::Vector2d lo = spec.polygon().front(), hi = lo;
      for (const auto& v : spec.polygon()) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
      while (true) {
        Point p = Point::xy(lo.x() + (hi.x() - lo.x()) * unit(rng), lo.y() + (hi.y() - lo.y()) * unit(rng));
        if (contains(spec, p)) return p;
      }
    }
    case DomainKind::Sphere: {
      std::normal_distribution<double> g;
      Eigen::Vector3d v(g(rng), g(rng), g(rng));
      while (!(v.norm() > 1e-6)) v = Eigen::Vector3d(g(rng), g(rng), g(rng));
      return Point(Eigen::VectorXd(v.normalized() * spec.sphere_radius()));
    }
    case DomainKind::PlaneMinusDisks: {
      if (spec.disks().empty()) return Point::xy(-5.0 + 10.0 * unit(rng), -5.0 + 10.0 * unit(rng));
      std::uniform_int_distribution<std::size_t> pick(0, spec.disks().size() - 1);
      while (true) {
        const Disk& d = spec.disks()[pick(rng)];
        const double half = d.radius + 1.5;
        Point p = Point::xy(d.center.x() + half * (2.0 * unit(rng) - 1.0), d.center.y() + half * (2.0 * unit(rng) - 1.0));
        if (contains(spec, p)) return p;
      }
    }
    case DomainKind::MetricTree: {
      const auto& tree = spec.tree();
      double total = 0.0;
      for (const auto& e : tree.edges()) total += e.length;
      double x = total * unit(rng);
      for (int i = 0; i < tree.edge_count(); ++i) {
        const double len = tree.edge(i).length;
        if (x <= len || i + 1 == tree.edge_count()) return Point(tree.canonical({i, std::min(x, len)}));
        x -= len;
      }
      break;
    }
  }
  throw Error(ErrorKind::Unsupported, "cannot sample this domain");
}

CheckReport cat_thinness_sample(const DomainSpec& spec, int trials, int samples_per_triangle, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> apex_pick(0, 2);
  const double K = std::max(spec.curvature_bound(), 0.0);
  const double tolerance = spec.kind() == DomainKind::PlaneMinusDisks ? tol::angle : tol::geometric;
  Worst w;
  int accepted = 0, skipped = 0, attempts = 0;
  std::size_t sample_index = 0;
  while (accepted < trials && attempts < 50 * trials) {
    ++attempts;
    const Point v[3] = {sample_point(spec, rng), sample_point(spec, rng), sample_point(spec, rng)};
    GeodesicPath side[3][3];
    bool ok = true;
    double perimeter = 0.0;
    try {
      for (int i = 0; i < 3 && ok; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          side[i][j] = shortest_path(spec, v[i], v[j]);
          side[j][i] = reversed(side[i][j]);
          perimeter += side[i][j].length;
          if (!(side[i][j].length > 1e-6)) ok = false;
        }
      }
    } catch (const Error&) {
      ok = false;  // ambiguous side
    }
    if (ok && K > 0.0 && perimeter * std::sqrt(K) >= 2.0 * pi - 1e-9) ok = false;
    if (!ok) {
      ++skipped;
      continue;
    }
    ++accepted;
    for (int k = 0; k < samples_per_triangle; ++k, ++sample_index) {
      const int p = apex_pick(rng);
      const int q = (p + 1) % 3, r = (p + 2) % 3;
      const double s = unit(rng), u = unit(rng);
      const GeodesicPath& pq = side[p][q];
      const GeodesicPath& pr = side[p][r];
      const Point x = point_along(spec, pq, s * pq.length);
      const Point y = point_along(spec, pr, u * pr.length);
      const double model = model_distance(K, side[q][r].length, pq.length, pr.length, s, u);
      w.offer(distance(spec, x, y) - model, sample_index);
    }
  }
  CheckReport rep = finish("cat_thinness", w, tolerance);
  rep.context["triangles"] = accepted;
  rep.context["skipped"] = skipped;
  if (accepted < trials) rep.note = "fewer admissible triangles than requested";
  return rep;
}

CheckReport first_variation_check(const DomainSpec& spec, const GeodesicPath& g1, const GeodesicPath& g2, double h) {
  if (!(h > 0.0) || h > g1.length || h > g2.length) {
    throw Error(ErrorKind::Precondition, "step h must be positive and within both geodesics");
  }
  const double r0 = distance(spec, g1.start, g2.start);
  if (!(r0 > 0.0)) throw Error(ErrorKind::Degenerate, "geodesics start at the same point");
  if (spec.curvature_bound() > 0.0 && !(r0 < spec.threshold())) {
    throw Error(ErrorKind::Precondition, "start points are too far apart for K > 0");
  }
  const GeodesicPath link = shortest_path(spec, g1.start, g2.start);
  const double a1 = angle_between(direction_at(spec, g1, PathEnd::Start), direction_at(spec, link, PathEnd::Start));
  const double a2 =
      angle_between(direction_at(spec, g2, PathEnd::Start), opposite(direction_at(spec, link, PathEnd::Finish)));
  const double rh = distance(spec, point_along(spec, g1, h), point_along(spec, g2, h));
  const double fd = (rh - r0) / h;
  const double predicted = -(std::cos(a1) + std::cos(a2));
  CheckReport rep;
  rep.name = "first_variation";
  rep.tolerance = 10.0 * h + 1e-8;
  rep.worst = std::abs(fd - predicted);
  rep.index = 0;
  rep.pass = rep.worst <= rep.tolerance;
  rep.context["finite_difference"] = fd;
  rep.context["predicted"] = predicted;
  rep.context["r0"] = r0;
  return rep;
}

CheckReport first_variation_sample(const DomainSpec& spec, int pairs, double h, double tolerance,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double R = spec.kind() == DomainKind::Sphere ? spec.sphere_radius() : 1.0;
  // Start points must not sit within h of a tree vertex, where the
  // direction of a geodesic changes.
  auto away_from_vertices = [&](const Point& p) {
    if (spec.kind() != DomainKind::MetricTree) return true;
    const auto& loc = p.location();
    const double len = spec.tree().edge(loc.edge).length;
    return loc.offset > 1e-3 && loc.offset < len - 1e-3;
  };
  auto admissible_gap = [&](double r0) {
    if (spec.kind() == DomainKind::Sphere) return r0 > 0.3 * R && r0 < (pi - 0.3) * R;
    if (spec.curvature_bound() > 0.0) return r0 > 0.1 && r0 < spec.threshold() - 0.3;
    return r0 > 0.1;
  };

  Worst w;
  int done = 0, skipped = 0, attempts = 0;
  while (done < pairs && attempts < 50 * pairs) {
    ++attempts;
    const Point a = sample_point(spec, rng), b = sample_point(spec, rng);
    const Point ta = sample_point(spec, rng), tb = sample_point(spec, rng);
    if (!away_from_vertices(a) || !away_from_vertices(b)) {
      ++skipped;
      continue;
    }
    try {
      const double r0 = distance(spec, a, b);
      if (!admissible_gap(r0)) {
        ++skipped;
        continue;
      }
      const GeodesicPath g1 = shortest_path(spec, a, ta);
      const GeodesicPath g2 = shortest_path(spec, b, tb);
      if (g1.length < 100.0 * h || g2.length < 100.0 * h) {
        ++skipped;
        continue;
      }
      const CheckReport one = first_variation_check(spec, g1, g2, h);
      w.offer(one.worst, static_cast<std::size_t>(done));
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Ambiguity) throw;
      ++skipped;
    }
  }
  CheckReport rep = finish("first_variation", w, tolerance);
  rep.context["pairs"] = done;
  rep.context["skipped"] = skipped;
  if (done < pairs) rep.note = "fewer admissible pairs than requested";
  return rep;
}

std::vector<WindowSeries> limit_geodesic_diagnostic(const PursuitTrace& tr, const std::vector<double>& widths,
                                                    int points) {
  require_series(tr);
  if (tr.capture_step) throw Error(ErrorKind::NotApplicable, "captured trace has no limit geodesic");
  if (points < 4) throw Error(ErrorKind::Configuration, "need at least 4 window positions");
  std::vector<double> t(tr.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = tr.time(k);
  const double T = t.back();
  std::vector<WindowSeries> out;
  for (double width : widths) {
    if (!(width > 0.0) || 2.0 * width > T) throw Error(ErrorKind::Range, "window wider than the trace");
    WindowSeries ws;
    ws.width = width;
    for (int j = 0; j < points; ++j) {
      const double t0 = width + (T - 2.0 * width) * j / (points - 1);
      ws.t0.push_back(t0);
      ws.rotation.push_back(window_total_rotation(t, tr.tau_p, t0, width));
    }
    const auto tail = static_cast<std::size_t>(points - points / 4);
    ws.converging = std::all_of(ws.rotation.begin() + static_cast<std::ptrdiff_t>(tail), ws.rotation.end(),
                                [](double x) { return x <= 1e-3; });
    out.push_back(std::move(ws));
  }
  return out;
}

}  // namespace catpursuit
