#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/errors.hpp"

#include <Eigen/Dense>

#include <variant>
#include <vector>

namespace catpursuit {

struct LinePiece {
  Eigen::VectorXd from;
  Eigen::VectorXd to;
};

/// Boundary arc of a removed disk. `end_angle - start_angle` equals
/// `orientation * sweep` with sweep >= 0 (sweeps above 2*pi are full circuits).
struct ArcPiece {
  Eigen::Vector2d center;
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  int orientation = 1;
};

/// Great-circle arc on a sphere of radius `radius` centred at the origin.
struct GreatCirclePiece {
  Eigen::Vector3d from;
  Eigen::Vector3d tangent;  // unit, orthogonal to `from`
  double radius = 1.0;
  double length = 0.0;
};

struct TreeSegment {
  int edge = 0;
  double from_offset = 0.0;
  double to_offset = 0.0;
};

using PathPiece = std::variant<LinePiece, ArcPiece, GreatCirclePiece, TreeSegment>;

double piece_length(const PathPiece& piece);

struct GeodesicPath {
  Point start;
  Point finish;
  std::vector<PathPiece> pieces;
  double length = 0.0;

  bool empty() const { return pieces.empty(); }
};

/// Initial direction of a geodesic. Coordinate domains use a unit tangent
/// vector; metric trees use an edge id plus the sense of travel along it
/// (+1 toward increasing offset).
struct Direction {
  Eigen::VectorXd tangent;
  int edge = -1;
  int sense = 0;

  bool on_tree() const { return edge >= 0; }
};

/// Angle distance in [0, pi].
double angle_between(const Direction& a, const Direction& b);
Direction opposite(Direction d);

enum class PathEnd { Start, Finish };

class AmbiguityError : public Error {
 public:
  AmbiguityError(const std::string& what, std::vector<GeodesicPath> candidates)
      : Error(ErrorKind::Ambiguity, what), candidates_(std::move(candidates)) {}

  const std::vector<GeodesicPath>& candidates() const { return candidates_; }

 private:
  std::vector<GeodesicPath> candidates_;
};

double distance(const DomainSpec& spec, const Point& p, const Point& q);

GeodesicPath shortest_path(const DomainSpec& spec, const Point& p, const Point& q,
                           TieBreak tie_break = TieBreak::forbid());

/// Point at arclength `s` from the path start. Throws Error(Range) when s is
/// outside [0, length].
Point point_along(const DomainSpec& spec, const GeodesicPath& path, double s);

/// Direction of travel at the requested end (at Finish: the arriving
/// direction, not reversed). Throws Error(Degenerate) on empty paths.
Direction direction_at(const DomainSpec& spec, const GeodesicPath& path, PathEnd end);

/// Angle at p between the geodesics p->q and p->r.
double angle_at(const DomainSpec& spec, const Point& p, const Point& q, const Point& r,
                TieBreak tie_break = TieBreak::forbid());

GeodesicPath reversed(const GeodesicPath& path);

/// Restriction to arclengths [s0, s1].
GeodesicPath subpath(const DomainSpec& spec, const GeodesicPath& path, double s0, double s1);

/// `count` >= 2 points at uniform arclength spacing, both ends included.
std::vector<Point> sample_path(const DomainSpec& spec, const GeodesicPath& path, int count);

bool same_point(const DomainSpec& spec, const Point& p, const Point& q, double tolerance = 1e-12);

/// Largest gap between consecutive piece endpoints and largest turning angle
/// at piece junctions. Both vanish for a local geodesic.
struct JunctionResidual {
  double gap = 0.0;
  double turn = 0.0;
};
JunctionResidual junction_residual(const DomainSpec& spec, const GeodesicPath& path);

}  // namespace catpursuit
