#include "catpursuit/pursuit.hpp"

#include "catpursuit/curves.hpp"
#include "catpursuit/errors.hpp"
#include "catpursuit/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace catpursuit {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double pi = std::numbers::pi;

std::string at_step(std::size_t i, const Error& e) { return "step " + std::to_string(i) + ": " + e.detail(); }

}  // namespace

std::optional<Point> pursuit_step(const DomainSpec& spec, const Point& pursuer, const Point& evader, double step,
                                  TieBreak tie_break) {
  if (!(step > 0.0)) throw Error(ErrorKind::Configuration, "step size must be positive");
  const GeodesicPath path = shortest_path(spec, pursuer, evader, tie_break);
  if (path.length <= step) return std::nullopt;
  return canonical(spec, point_along(spec, path, step));
}

PursuitTrace run_discrete(const DomainSpec& spec, const Point& pursuer_start, const Point& evader_start,
                          EvaderPolicy& policy, double step, const RunOptions& options) {
  if (!(step > 0.0)) throw Error(ErrorKind::Configuration, "step size must be positive");
  validate_point(spec, pursuer_start);
  validate_point(spec, evader_start);
  const double K = spec.curvature_bound();
  const double kmodel = std::max(K, 0.0);
  const double scale = K > 0.0 ? std::sqrt(K) : 1.0;

  PursuitTrace tr;
  tr.step = step;
  tr.curvature = K;
  tr.pursuer.push_back(canonical(spec, pursuer_start));
  tr.evader.push_back(canonical(spec, evader_start));
  tr.separation.push_back(distance(spec, tr.pursuer[0], tr.evader[0]));
  if (K > 0.0 && !options.allow_large_separation && !(tr.separation[0] < spec.threshold())) {
    throw Error(ErrorKind::Precondition, "initial separation reaches pi/sqrt(K)");
  }
  tr.b_min = std::numeric_limits<double>::infinity();

  GeodesicPath path;
  if (tr.separation[0] > step) path = shortest_path(spec, tr.pursuer[0], tr.evader[0], options.tie_break);
  std::optional<Direction> last_evader_finish;

  for (std::size_t i = 0; i < options.max_steps; ++i) {
    const double L = tr.separation[i];
    if (L <= step) {
      tr.capture_step = i;
      break;
    }
    try {
      Point p_next = canonical(spec, point_along(spec, path, step));
      const Direction rem_start = direction_at(spec, subpath(spec, path, step, path.length), PathEnd::Start);
      const Direction seg_finish = direction_at(spec, subpath(spec, path, 0.0, step), PathEnd::Finish);
      const Direction path_finish = direction_at(spec, path, PathEnd::Finish);

      const StepContext ctx{spec, static_cast<std::int64_t>(i), tr.pursuer[i], tr.evader[i], p_next, step};
      Point e_next = policy.next(ctx);
      try {
        validate_point(spec, e_next);
      } catch (const Error& e) {
        throw Error(ErrorKind::PolicyViolation, "evader left the domain: " + e.detail());
      }
      e_next = canonical(spec, e_next);
      const double moved = distance(spec, tr.evader[i], e_next);
      if (moved > step + tol::point) {
        throw Error(ErrorKind::PolicyViolation, "evader moved " + std::to_string(moved) + " > D");
      }
      const double Ln = distance(spec, p_next, e_next);
      tr.pursuer.push_back(std::move(p_next));
      tr.evader.push_back(std::move(e_next));
      tr.separation.push_back(Ln);
      for (auto* v : {&tr.alpha, &tr.alpha_tilde, &tr.beta, &tr.phi, &tr.delta, &tr.theta}) v->push_back(nan);
      tr.increment.push_back(L - Ln);
      tr.b_min = std::min(tr.b_min, std::sin(scale * Ln) * std::sin(scale * (L - step)));

      std::optional<Direction> evader_start, evader_finish;
      if (moved > 0.0) {
        const GeodesicPath seg = shortest_path(spec, tr.evader[i], tr.evader[i + 1], TieBreak::upper());
        evader_start = direction_at(spec, seg, PathEnd::Start);
        evader_finish = direction_at(spec, seg, PathEnd::Finish);
      }
      path = GeodesicPath{};
      if (Ln > 0.0) {
        path = shortest_path(spec, tr.pursuer[i + 1], tr.evader[i + 1],
                             options.tie_break.advanced(static_cast<std::int64_t>(i + 1)));
        const Direction out = direction_at(spec, path, PathEnd::Start);
        tr.alpha[i] = evader_start ? angle_between(rem_start, out) : 0.0;
        if (Ln > step) tr.beta[i] = angle_between(opposite(seg_finish), out);
        if (evader_finish) {
          tr.delta[i] = angle_between(opposite(*evader_finish), opposite(direction_at(spec, path, PathEnd::Finish)));
        }
      }
      try {
        tr.alpha_tilde[i] = comparison_angle(kmodel, moved, L - step, Ln);
      } catch (const Error&) {
        // no model triangle; the sandwich check skips this step
      }
      if (evader_start) {
        tr.phi[i] = angle_between(opposite(path_finish), *evader_start);
        if (last_evader_finish) tr.theta[i] = angle_between(opposite(*last_evader_finish), *evader_start);
        last_evader_finish = evader_finish;
      }
    } catch (const AmbiguityError& e) {
      throw Error(ErrorKind::Ambiguity, at_step(i, e));
    } catch (const Error& e) {
      throw Error(e.kind(), at_step(i, e));
    }
  }

  const std::size_t n = tr.size();
  for (auto* v : {&tr.alpha, &tr.alpha_tilde, &tr.beta, &tr.phi, &tr.delta, &tr.theta, &tr.increment}) {
    v->push_back(nan);
  }
  // beta at the last position needs a pursuer move that never happened.
  if (n >= 2) tr.beta[n - 2] = nan;
  if (n < 2) tr.b_min = nan;

  for (auto* v : {&tr.tau_p, &tr.tau_e}) v->assign(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    tr.tau_p[k] = tr.tau_p[k - 1] + (k >= 2 && std::isfinite(tr.beta[k - 2]) ? pi - tr.beta[k - 2] : 0.0);
    tr.tau_e[k] = tr.tau_e[k - 1] + (std::isfinite(tr.theta[k - 1]) ? pi - tr.theta[k - 1] : 0.0);
  }
  if (options.circumradius) {
    for (auto* v : {&tr.c_p, &tr.c_e, &tr.r_p, &tr.r_e}) v->assign(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
      tr.r_p[k] = distance(spec, tr.pursuer[0], tr.pursuer[k]);
      tr.r_e[k] = distance(spec, tr.evader[0], tr.evader[k]);
      tr.c_p[k] = std::max(tr.c_p[k - 1], tr.r_p[k]);
      tr.c_e[k] = std::max(tr.c_e[k - 1], tr.r_e[k]);
    }
  } else {
    for (auto* v : {&tr.c_p, &tr.c_e, &tr.r_p, &tr.r_e}) v->assign(n, nan);
  }
  return tr;
}

namespace {

/// Pursuer position at time t, interpolated along the geodesic step.
Point pursuer_at(const DomainSpec& spec, const PursuitTrace& tr, double t, TieBreak tb) {
  const double x = t / tr.step;
  auto j = static_cast<std::size_t>(std::floor(x + 1e-9));
  if (j + 1 >= tr.size()) return tr.pursuer.back();
  const double frac = (x - static_cast<double>(j)) * tr.step;
  if (frac <= 1e-12 * tr.step) return tr.pursuer[j];
  const GeodesicPath seg = shortest_path(spec, tr.pursuer[j], tr.pursuer[j + 1], tb);
  return point_along(spec, seg, std::min(frac, seg.length));
}

}  // namespace

DyadicReport run_dyadic(const DomainSpec& spec, const Point& pursuer_start, const PrescribedCurve& evader, int m_min,
                        int m_max, double horizon, TieBreak tie_break) {
  if (m_min < 0 || m_max < m_min || m_max > 30) throw Error(ErrorKind::Configuration, "bad dyadic level range");
  if (!(horizon > 0.0)) throw Error(ErrorKind::Configuration, "horizon must be positive");
  DyadicReport rep;
  const double coarse = std::ldexp(1.0, -m_min);
  const double units = std::floor(horizon / coarse + 1e-9);
  rep.horizon = units * coarse;
  rep.horizon_rounded = std::abs(rep.horizon - horizon) > 1e-12 * std::max(1.0, horizon);
  if (!(rep.horizon > 0.0)) throw Error(ErrorKind::Configuration, "horizon shorter than the coarsest step");

  const Point e0 = evader.at(0.0);
  for (int m = m_min; m <= m_max; ++m) {
    DyadicLevel lvl;
    lvl.m = m;
    lvl.step = std::ldexp(1.0, -m);
    RunOptions opt;
    opt.max_steps = static_cast<std::size_t>(std::llround(rep.horizon / lvl.step));
    opt.tie_break = tie_break;
    auto policy = prescribed(evader);
    rep.traces.push_back(run_discrete(spec, pursuer_start, e0, *policy, lvl.step, opt));
    lvl.steps = rep.traces.back().size() - 1;
    lvl.capture_step = rep.traces.back().capture_step;
    rep.levels.push_back(lvl);
  }

  const PursuitTrace& finest = rep.traces.back();
  for (std::size_t k = 0; k < rep.levels.size(); ++k) {
    const PursuitTrace& tr = rep.traces[k];
    auto& lvl = rep.levels[k];
    const std::size_t stride = std::size_t{1} << (m_max - lvl.m);
    lvl.separation_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tr.size() && i * stride < finest.size(); ++i) {
      const double Lf = finest.separation[i * stride];
      if (Lf > 0.0) lvl.separation_ratio = std::min(lvl.separation_ratio, tr.separation[i] / Lf);
    }
    if (k + 1 == rep.levels.size()) {
      lvl.gap_to_next = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const PursuitTrace& fine = rep.traces[k + 1];
    const double span = std::min(tr.time(tr.size() - 1), fine.time(fine.size() - 1));
    const double dt = 0.25 * lvl.step;
    double gap = 0.0;
    for (std::size_t j = 0; static_cast<double>(j) * dt <= span + 1e-12; ++j) {
      const double t = static_cast<double>(j) * dt;
      gap = std::max(gap, distance(spec, pursuer_at(spec, tr, t, tie_break), pursuer_at(spec, fine, t, tie_break)));
    }
    lvl.gap_to_next = gap;
  }
  return rep;
}

}  // namespace catpursuit
