#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/geodesic.hpp"
#include "catpursuit/growth.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace catpursuit {

/// Piecewise-geodesic curve through a vertex list, with the connecting
/// geodesics and cumulative arclength cached at construction.
class PolygonalCurve {
 public:
  /// Throws Error(Degenerate) on repeated consecutive vertices.
  PolygonalCurve(const DomainSpec& spec, std::vector<Point> vertices,
                 TieBreak tie_break = TieBreak::forbid());

  /// Same, but silently drops consecutive repeats first (stationary steps).
  /// Fewer than two distinct vertices leave a single-vertex curve.
  static PolygonalCurve without_repeats(const DomainSpec& spec, const std::vector<Point>& vertices,
                                        TieBreak tie_break = TieBreak::forbid());

  const DomainSpec& domain() const { return spec_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<GeodesicPath>& paths() const { return paths_; }
  /// arclength()[k] is the arclength at vertex k.
  const std::vector<double>& arclength() const { return arclength_; }
  double length() const { return arclength_.back(); }
  std::size_t size() const { return vertices_.size(); }

  Point point_at(double t) const;

 private:
  PolygonalCurve(const DomainSpec& spec) : spec_(spec) {}

  DomainSpec spec_;
  std::vector<Point> vertices_;
  std::vector<GeodesicPath> paths_;
  std::vector<double> arclength_;
};

/// Sampled curve functions. Columns that an operation does not fill are left
/// empty.
struct CurveSeries {
  std::vector<double> t;
  std::vector<double> tau;
  std::vector<double> c;
  std::vector<double> r;
};

/// pi - beta at each interior vertex, where beta is the angle at the vertex
/// between the incoming and outgoing connecting geodesics.
std::vector<double> turning_angles(const PolygonalCurve& curve);
double total_rotation(const PolygonalCurve& curve);

/// tau at every vertex arclength (the value includes the jump at that vertex).
CurveSeries tc_function(const PolygonalCurve& curve);

/// c and r at vertex arclengths; for K > 0 also at `samples_per_piece`
/// interior points of every connecting geodesic.
CurveSeries circumradius_function(const PolygonalCurve& curve, int samples_per_piece = 64);

/// Angle opposite side a of the model triangle with sides a, b, c in the
/// plane of constant curvature K (K <= 0 uses the flat plane).
double comparison_angle(double K, double a, double b, double c);

/// Distance between the points at fractions (s, u) along sides pq and pr of
/// the model triangle with sides |pq| = b, |pr| = c, |qr| = a.
double model_distance(double K, double a, double b, double c, double s, double u);

struct ChordArcSubarc {
  std::size_t first = 0;  // vertex indices
  std::size_t last = 0;
  double turn = 0.0;
  double length = 0.0;
  double chord = 0.0;
  double ratio = 0.0;
};

struct ChordArcReport {
  std::vector<ChordArcSubarc> subarcs;
  double total_turn = 0.0;
  double length = 0.0;
  double max_ratio = 0.0;
  /// Largest length - sqrt(2) * chord over the subarcs.
  double worst_excess = 0.0;
  double sup_chord = 0.0;
  double aggregate_bound = 0.0;
  /// Partition count within tau / (pi/2) + 1, so the aggregate bound applies.
  bool aggregate_applicable = false;
  bool aggregate_holds = false;
};

/// Greedy partition into maximal subarcs of internal turn <= pi/2; a vertex
/// turning by more than pi/2 is always a cut. CAT(0) domains only.
ChordArcReport chord_arc_certificate(const PolygonalCurve& curve);

/// Longest isosceles once-broken unit-sphere geodesic with turn `tau` and
/// endpoint separation `d`.
double spherical_length_bound(double tau, double d);

double window_total_rotation(const PolygonalCurve& curve, double t0, double width);
/// Same for a sampled step function tau(t) (right-continuous).
double window_total_rotation(const std::vector<double>& t, const std::vector<double>& tau, double t0,
                             double width);

struct RayFit {
  Eigen::VectorXd origin;
  Eigen::VectorXd direction;
  std::vector<double> t;
  std::vector<double> residual;
  std::optional<GrowthFit> exponent;
};

/// Ray from the curve start along the unit chord to its end; residuals are
/// distances from the vertices to that ray. The exponent is fitted over
/// vertices with arclength in [fit_from, fit_to] when the residuals there are
/// positive.
RayFit asymptotic_ray_fit(const PolygonalCurve& curve, double fit_from = 0.0,
                          double fit_to = std::numeric_limits<double>::infinity());

}  // namespace catpursuit
