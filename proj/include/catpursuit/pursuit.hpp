#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/geodesic.hpp"
#include "catpursuit/policies.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace catpursuit {

/// Per-step record of a discrete pursuit run. Position and series vectors all
/// have one entry per recorded position; per-step quantities are NaN where
/// undefined (at the last position, or when the geometry degenerates).
struct PursuitTrace {
  double step = 0.0;
  double curvature = 0.0;
  std::vector<Point> pursuer;
  std::vector<Point> evader;
  std::vector<double> separation;

  std::vector<double> alpha;
  std::vector<double> alpha_tilde;
  std::vector<double> beta;
  std::vector<double> phi;
  std::vector<double> delta;
  std::vector<double> theta;
  std::vector<double> increment;

  std::vector<double> tau_p;
  std::vector<double> tau_e;
  std::vector<double> c_p;
  std::vector<double> c_e;
  std::vector<double> r_p;
  std::vector<double> r_e;

  std::optional<std::size_t> capture_step;
  /// min sin(s L_{i+1}) sin(s (L_i - D)) with s = sqrt(K) (1 when K <= 0).
  double b_min = 0.0;

  std::size_t size() const { return separation.size(); }
  double time(std::size_t k) const { return static_cast<double>(k) * step; }
};

struct RunOptions {
  std::size_t max_steps = 1000;
  TieBreak tie_break = TieBreak::forbid();
  /// Permit L_0 >= pi/sqrt(K) (only meaningful with a tie-break).
  bool allow_large_separation = false;
  /// Skip the per-vertex circumradius columns (they cost a distance per
  /// vertex and are not needed by every caller).
  bool circumradius = true;
};

/// P_{i+1}, or nothing when L_i <= D (capture).
std::optional<Point> pursuit_step(const DomainSpec& spec, const Point& pursuer, const Point& evader, double step,
                                  TieBreak tie_break = TieBreak::forbid());

/// The pursuer uses tie_break.advanced(i) at step i.
PursuitTrace run_discrete(const DomainSpec& spec, const Point& pursuer_start, const Point& evader_start,
                          EvaderPolicy& policy, double step, const RunOptions& options);

struct DyadicLevel {
  int m = 0;
  double step = 0.0;
  std::size_t steps = 0;
  std::optional<std::size_t> capture_step;
  /// sup over common times of d(P_m(t), P_{m+1}(t)); NaN for the last level.
  double gap_to_next = 0.0;
  /// min over the level's times of L_m(t) / L_finest(t).
  double separation_ratio = 0.0;
};

struct DyadicReport {
  double horizon = 0.0;
  bool horizon_rounded = false;
  std::vector<DyadicLevel> levels;
  std::vector<PursuitTrace> traces;
};

DyadicReport run_dyadic(const DomainSpec& spec, const Point& pursuer_start, const PrescribedCurve& evader, int m_min,
                        int m_max, double horizon, TieBreak tie_break = TieBreak::forbid());

}  // namespace catpursuit
