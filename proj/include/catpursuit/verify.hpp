#pragma once

#include "catpursuit/curves.hpp"
#include "catpursuit/domain.hpp"
#include "catpursuit/geodesic.hpp"
#include "catpursuit/growth.hpp"
#include "catpursuit/pursuit.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace catpursuit {

struct CheckReport {
  std::string name;
  bool pass = true;
  double worst = 0.0;
  std::optional<std::size_t> index;
  double tolerance = 0.0;
  std::map<std::string, double> context;
  std::string note;

  bool operator==(const CheckReport&) const = default;
};

/// L_{i+1} - L_i <= 1e-9 at every step. The context also carries the
/// telescoping residual |sum Delta_i - (L_0 - L_N)|.
CheckReport check_separation_monotone(const PursuitTrace& trace);

/// pi - beta_i <= alpha_i <= alpha~_i within 1e-6. Steps whose model triangle
/// does not exist (alpha~ NaN) are skipped and counted.
CheckReport check_angle_sandwich(const PursuitTrace& trace);

/// tau^P((n+1)D) <= tau^E(nD) + pi within 1e-6. K = 0 domains only.
CheckReport check_tc_relation(const PursuitTrace& trace);

struct SqrtBoundReport {
  double l0 = 0.0;
  double ln = 0.0;
  double b = 0.0;
  double c = 0.0;
  double b_horizon = 0.0;
  double c_horizon = 0.0;
  std::vector<double> tau_p;
  std::vector<double> margin;
  double worst_margin = 0.0;
  std::optional<std::size_t> worst_margin_index;
  /// Largest alpha~_i^2 - 5 Delta_i sin D / B over the steps.
  double worst_step_excess = 0.0;
  std::optional<std::size_t> worst_step_index;
  /// B small enough that the bound is numerically meaningless.
  bool b_degenerate = false;
};

/// K > 0 traces with sqrt(K) L_0 < pi that were not captured. All lengths are
/// rescaled by sqrt(K) first, so the bound is stated on the unit sphere.
SqrtBoundReport sqrt_bound_report(const PursuitTrace& trace);
CheckReport check_sqrt_bound(const SqrtBoundReport& report);

enum class Outcome { Capture, Escape, Undecided };
const char* to_string(Outcome outcome);

struct Classification {
  Outcome outcome = Outcome::Undecided;
  std::optional<std::size_t> capture_step;
  double l_final = 0.0;
  /// Slope of L per step over the last 10% of steps.
  double tail_slope = 0.0;
  std::optional<GrowthFit> tau_p;
  std::optional<GrowthFit> tau_e;
  std::optional<GrowthFit> c_p;
  std::optional<GrowthFit> c_e;
};

/// Capture when the trace records one; Escape when L_N > D and the tail slope
/// exceeds -1e-8 per step; Undecided otherwise (still closing in at the
/// horizon). Exponent fits are attempted for escapes and skipped when a
/// series is not strictly positive over its tail.
Classification capture_classifier(const PursuitTrace& trace);

/// Uniformly random valid point of a bounded sampling region of the domain.
Point sample_point(const DomainSpec& spec, std::mt19937_64& rng);

/// Random triangles; for each, random pairs of side points at matching
/// fractions are compared with the model triangle of curvature max(K, 0).
CheckReport cat_thinness_sample(const DomainSpec& spec, int trials, int samples_per_triangle,
                                std::uint64_t seed = 1);

/// Finite-difference derivative of t -> d(g1(t), g2(t)) at 0 against
/// -(cos a1 + cos a2). Tolerance 10 h + 1e-8.
CheckReport first_variation_check(const DomainSpec& spec, const GeodesicPath& g1, const GeodesicPath& g2,
                                  double h);

/// `pairs` random geodesic pairs; worst difference over all of them against
/// `tolerance`.
CheckReport first_variation_sample(const DomainSpec& spec, int pairs, double h, double tolerance,
                                   std::uint64_t seed = 1);

struct WindowSeries {
  double width = 0.0;
  std::vector<double> t0;
  std::vector<double> rotation;
  /// Every window in the last quarter of the grid is at most 1e-3.
  bool converging = false;
};

/// Pursuer window rotations tau^P(t0 + w) - tau^P(t0 - w) on a grid of
/// `points` values of t0.
/// Throws Error(NotApplicable) on captured traces.
std::vector<WindowSeries> limit_geodesic_diagnostic(const PursuitTrace& trace, const std::vector<double>& widths,
                                                    int points = 64);

}  // namespace catpursuit
