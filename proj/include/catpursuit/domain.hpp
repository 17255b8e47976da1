#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace catpursuit {

/// Location on a metric tree: an edge id and the distance from the edge's
/// first endpoint.
struct TreeLocation {
  int edge = 0;
  double offset = 0.0;
};

/// A point of some playing field. Coordinate domains (Euclidean, planar
/// regions, the sphere) carry an ambient coordinate vector; metric trees carry
/// a TreeLocation.
class Point {
 public:
  Point() = default;
  explicit Point(Eigen::VectorXd coords) : data_(std::move(coords)) {}
  explicit Point(TreeLocation loc) : data_(loc) {}

  static Point xy(double x, double y) { return Point(Eigen::Vector2d(x, y)); }
  static Point xyz(double x, double y, double z) { return Point(Eigen::Vector3d(x, y, z)); }
  static Point on_tree(int edge, double offset) { return Point(TreeLocation{edge, offset}); }

  bool on_tree() const { return std::holds_alternative<TreeLocation>(data_); }
  const Eigen::VectorXd& coords() const;
  const TreeLocation& location() const;

 private:
  std::variant<Eigen::VectorXd, TreeLocation> data_ = Eigen::VectorXd();
};

struct Disk {
  Eigen::Vector2d center;
  double radius = 1.0;
};

struct TreeEdge {
  int u = 0;
  int v = 0;
  double length = 1.0;
};

enum class DomainKind { Euclidean, ConvexRegion, Sphere, PlaneMinusDisks, MetricTree };

const char* to_string(DomainKind kind);

class MetricTreeIndex;

/// Geodesic choice when several shortest paths tie. `Upper` keeps the path
/// lying to the left of the directed chord p -> q (for the sphere: the side of
/// +z); `Alternate` resolves to Upper on even counters and Lower on odd ones.
struct TieBreak {
  enum class Mode { Forbid, Upper, Lower, Alternate };

  Mode mode = Mode::Forbid;
  std::int64_t counter = 0;

  static TieBreak forbid() { return {Mode::Forbid, 0}; }
  static TieBreak upper() { return {Mode::Upper, 0}; }
  static TieBreak lower() { return {Mode::Lower, 0}; }
  static TieBreak alternate(std::int64_t counter = 0) { return {Mode::Alternate, counter}; }

  /// Same mode, counter advanced (only meaningful for Alternate).
  TieBreak advanced(std::int64_t steps) const { return {mode, counter + steps}; }

  /// Forbid, Upper or Lower.
  Mode resolved() const {
    if (mode != Mode::Alternate) return mode;
    return (counter % 2 == 0) ? Mode::Upper : Mode::Lower;
  }
};

std::string to_string(const TieBreak& tb);

/// Immutable description of a CAT(K) playing field. Construct through the
/// named factories; each validates its invariants and throws
/// Error(InvalidDomain) on violation.
class DomainSpec {
 public:
  static DomainSpec euclidean(int dim);
  static DomainSpec convex_disk(double radius);
  static DomainSpec convex_polygon(std::vector<Eigen::Vector2d> vertices);
  static DomainSpec sphere(double radius);
  static DomainSpec plane_minus_disks(std::vector<Disk> disks);
  /// Skips the radius >= 1 check and declares `curvature_bound` anyway.
  /// Exists for negative controls of the comparison-geometry monitors.
  static DomainSpec plane_minus_disks_unchecked(std::vector<Disk> disks, double curvature_bound);
  static DomainSpec metric_tree(int vertex_count, std::vector<TreeEdge> edges);
  /// Random recursive tree: vertex k+1 attaches to a uniformly chosen earlier
  /// vertex; lengths uniform in [min_length, max_length].
  static DomainSpec random_metric_tree(int edge_count, std::uint64_t seed, double min_length = 0.5,
                                       double max_length = 2.0);

  DomainKind kind() const { return kind_; }
  double curvature_bound() const { return curvature_; }
  bool compact() const { return compact_; }
  /// pi / sqrt(K), infinite for K <= 0.
  double threshold() const;
  /// Coordinate dimension of points (0 for metric trees).
  int dimension() const { return dim_; }
  bool planar() const;

  double disk_radius() const { return region_radius_; }
  const std::vector<Eigen::Vector2d>& polygon() const { return polygon_; }
  double sphere_radius() const { return sphere_radius_; }
  const std::vector<Disk>& disks() const { return disks_; }
  const MetricTreeIndex& tree() const;

  std::string describe() const;

 private:
  DomainSpec() = default;

  DomainKind kind_ = DomainKind::Euclidean;
  double curvature_ = 0.0;
  bool compact_ = false;
  int dim_ = 2;
  double region_radius_ = 0.0;
  std::vector<Eigen::Vector2d> polygon_;
  double sphere_radius_ = 1.0;
  std::vector<Disk> disks_;
  std::shared_ptr<const MetricTreeIndex> tree_;
};

/// Throws Error(InvalidPoint) naming the violated constraint.
void validate_point(const DomainSpec& spec, const Point& p);
bool contains(const DomainSpec& spec, const Point& p);

/// Canonical representation (tree vertices map to a single (edge, offset)).
Point canonical(const DomainSpec& spec, const Point& p);

}  // namespace catpursuit
