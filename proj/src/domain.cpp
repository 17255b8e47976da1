#include "catpursuit/domain.hpp"

#include "catpursuit/errors.hpp"
#include "catpursuit/metric_tree.hpp"
#include "catpursuit/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace catpursuit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPoint: return "invalid point";
    case ErrorKind::InvalidDomain: return "invalid domain";
    case ErrorKind::Ambiguity: return "geodesic ambiguity";
    case ErrorKind::Range: return "range error";
    case ErrorKind::Degenerate: return "degenerate input";
    case ErrorKind::ModelTriangle: return "model triangle";
    case ErrorKind::Perimeter: return "perimeter";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Unsupported: return "unsupported domain";
    case ErrorKind::Fit: return "fit error";
    case ErrorKind::PolicyViolation: return "policy violation";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::IncompleteTrace: return "incomplete trace";
    case ErrorKind::Hypothesis: return "hypothesis violated";
    case ErrorKind::NotApplicable: return "not applicable";
  }
  return "error";
}

const Eigen::VectorXd& Point::coords() const {
  if (const auto* c = std::get_if<Eigen::VectorXd>(&data_)) return *c;
  throw Error(ErrorKind::InvalidPoint, "tree location has no coordinates");
}

const TreeLocation& Point::location() const {
  if (const auto* loc = std::get_if<TreeLocation>(&data_)) return *loc;
  throw Error(ErrorKind::InvalidPoint, "coordinate point has no tree location");
}

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Euclidean: return "euclidean";
    case DomainKind::ConvexRegion: return "convex_region";
    case DomainKind::Sphere: return "sphere";
    case DomainKind::PlaneMinusDisks: return "plane_minus_disks";
    case DomainKind::MetricTree: return "metric_tree";
  }
  return "unknown";
}

std::string to_string(const TieBreak& tb) {
  switch (tb.mode) {
    case TieBreak::Mode::Forbid: return "forbid";
    case TieBreak::Mode::Upper: return "upper";
    case TieBreak::Mode::Lower: return "lower";
    case TieBreak::Mode::Alternate: return "alternate(" + std::to_string(tb.counter) + ")";
  }
  return "forbid";
}

DomainSpec DomainSpec::euclidean(int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidDomain, "euclidean dimension must be positive");
  DomainSpec s;
  s.kind_ = DomainKind::Euclidean;
  s.dim_ = dim;
  return s;
}

DomainSpec DomainSpec::convex_disk(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidDomain, "convex disk radius must be positive");
  DomainSpec s;
  s.kind_ = DomainKind::ConvexRegion;
  s.compact_ = true;
  s.region_radius_ = radius;
  return s;
}

DomainSpec DomainSpec::convex_polygon(std::vector<Eigen::Vector2d> vertices) {
  const auto n = vertices.size();
  if (n < 3) throw Error(ErrorKind::InvalidDomain, "convex polygon needs at least 3 vertices");
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % n];
    area += a.x() * b.y() - a.y() * b.x();
  }
  if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d e1 = vertices[(i + 1) % n] - vertices[i];
    const Eigen::Vector2d e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    const double cross = e1.x() * e2.y() - e1.y() * e2.x();
    if (!(cross > 0.0)) {
      std::ostringstream os;
      os << "polygon is not strictly convex at vertex " << (i + 1) % n;
      throw Error(ErrorKind::InvalidDomain, os.str());
    }
  }
  DomainSpec s;
  s.kind_ = DomainKind::ConvexRegion;
  s.compact_ = true;
  s.polygon_ = std::move(vertices);
  return s;
}

DomainSpec DomainSpec::sphere(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidDomain, "sphere radius must be positive");
  DomainSpec s;
  s.kind_ = DomainKind::Sphere;
  s.dim_ = 3;
  s.sphere_radius_ = radius;
  s.curvature_ = 1.0 / (radius * radius);
  s.compact_ = true;
  return s;
}

namespace {

void check_disjoint(const std::vector<Disk>& disks) {
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (!(disks[i].radius > 0.0)) {
      throw Error(ErrorKind::InvalidDomain, "disk " + std::to_string(i) + " has nonpositive radius");
    }
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const double d = (disks[i].center - disks[j].center).norm();
      if (!(d > disks[i].radius + disks[j].radius)) {
        throw Error(ErrorKind::InvalidDomain,
                    "disks " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
}

}  // namespace

DomainSpec DomainSpec::plane_minus_disks(std::vector<Disk> disks) {
  check_disjoint(disks);
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (disks[i].radius < 1.0) {
      throw Error(ErrorKind::InvalidDomain,
                  "disk " + std::to_string(i) + " has radius below 1; the CAT(1) bound needs radius >= 1");
    }
  }
  DomainSpec s;
  s.kind_ = DomainKind::PlaneMinusDisks;
  s.disks_ = std::move(disks);
  s.curvature_ = s.disks_.empty() ? 0.0 : 1.0;
  return s;
}

DomainSpec DomainSpec::plane_minus_disks_unchecked(std::vector<Disk> disks, double curvature_bound) {
  check_disjoint(disks);
  DomainSpec s;
  s.kind_ = DomainKind::PlaneMinusDisks;
  s.disks_ = std::move(disks);
  s.curvature_ = curvature_bound;
  return s;
}

DomainSpec DomainSpec::metric_tree(int vertex_count, std::vector<TreeEdge> edges) {
  DomainSpec s;
  s.kind_ = DomainKind::MetricTree;
  s.dim_ = 0;
  s.compact_ = true;
  s.tree_ = std::make_shared<const MetricTreeIndex>(vertex_count, std::move(edges));
  return s;
}

DomainSpec DomainSpec::random_metric_tree(int edge_count, std::uint64_t seed, double min_length,
                                          double max_length) {
  if (edge_count < 1) throw Error(ErrorKind::InvalidDomain, "tree needs at least one edge");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(min_length, max_length);
  std::vector<TreeEdge> edges;
  for (int v = 1; v <= edge_count; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.push_back({parent(rng), v, len(rng)});
  }
  return metric_tree(edge_count + 1, std::move(edges));
}

double DomainSpec::threshold() const {
  if (curvature_ <= 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / std::sqrt(curvature_);
}

bool DomainSpec::planar() const {
  switch (kind_) {
    case DomainKind::Euclidean: return dim_ == 2;
    case DomainKind::ConvexRegion:
    case DomainKind::PlaneMinusDisks: return true;
    default: return false;
  }
}

const MetricTreeIndex& DomainSpec::tree() const {
  if (!tree_) throw Error(ErrorKind::Unsupported, "domain is not a metric tree");
  return *tree_;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case DomainKind::Euclidean: os << "(dim=" << dim_ << ")"; break;
    case DomainKind::ConvexRegion:
      if (polygon_.empty()) {
        os << "(disk radius=" << region_radius_ << ")";
      } else {
        os << "(polygon, " << polygon_.size() << " vertices)";
      }
      break;
    case DomainKind::Sphere: os << "(R=" << sphere_radius_ << ")"; break;
    case DomainKind::PlaneMinusDisks: os << "(" << disks_.size() << " disks)"; break;
    case DomainKind::MetricTree: os << "(" << tree_->edge_count() << " edges)"; break;
  }
  os << " K=" << curvature_;
  return os.str();
}

namespace {

std::string coords_string(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

void validate_point(const DomainSpec& spec, const Point& p) {
  if (spec.kind() == DomainKind::MetricTree) {
    if (!p.on_tree()) throw Error(ErrorKind::InvalidPoint, "metric tree needs a tree location");
    const auto& loc = p.location();
    const auto& tree = spec.tree();
    if (loc.edge < 0 || loc.edge >= tree.edge_count()) {
      throw Error(ErrorKind::InvalidPoint, "edge " + std::to_string(loc.edge) + " does not exist");
    }
    const double len = tree.edge(loc.edge).length;
    if (!(loc.offset >= -tol::point && loc.offset <= len + tol::point)) {
      std::ostringstream os;
      os << "offset " << loc.offset << " outside edge " << loc.edge << " of length " << len;
      throw Error(ErrorKind::InvalidPoint, os.str());
    }
    return;
  }
  if (p.on_tree()) throw Error(ErrorKind::InvalidPoint, "coordinate domain given a tree location");
  const auto& x = p.coords();
  if (x.size() != spec.dimension()) {
    throw Error(ErrorKind::InvalidPoint, "point " + coords_string(x) + " has dimension " +
                                             std::to_string(x.size()) + ", expected " +
                                             std::to_string(spec.dimension()));
  }
  if (!x.allFinite()) throw Error(ErrorKind::InvalidPoint, "non-finite coordinates");
  switch (spec.kind()) {
    case DomainKind::Euclidean: return;
    case DomainKind::ConvexRegion: {
      const Eigen::Vector2d y = x;
      if (spec.polygon().empty()) {
        if (y.norm() > spec.disk_radius() + tol::point) {
          throw Error(ErrorKind::InvalidPoint, "point " + coords_string(x) + " lies outside the disk region");
        }
        return;
      }
      const auto& poly = spec.polygon();
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Eigen::Vector2d e = poly[(i + 1) % poly.size()] - poly[i];
        const Eigen::Vector2d w = y - poly[i];
        if (e.x() * w.y() - e.y() * w.x() < -tol::point * e.norm()) {
          throw Error(ErrorKind::InvalidPoint,
                      "point " + coords_string(x) + " lies outside polygon edge " + std::to_string(i));
        }
      }
      return;
    }
    case DomainKind::Sphere: {
      const double R = spec.sphere_radius();
      if (std::abs(x.norm() - R) > tol::point * R) {
        throw Error(ErrorKind::InvalidPoint, "point " + coords_string(x) + " is off the sphere");
      }
      return;
    }
    case DomainKind::PlaneMinusDisks: {
      const Eigen::Vector2d y = x;
      for (std::size_t i = 0; i < spec.disks().size(); ++i) {
        const auto& d = spec.disks()[i];
        if ((y - d.center).norm() < d.radius - tol::point) {
          throw Error(ErrorKind::InvalidPoint,
                      "point " + coords_string(x) + " lies inside removed disk " + std::to_string(i));
        }
      }
      return;
    }
    case DomainKind::MetricTree: return;
  }
}

bool contains(const DomainSpec& spec, const Point& p) {
  try {
    validate_point(spec, p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Point canonical(const DomainSpec& spec, const Point& p) {
  if (spec.kind() != DomainKind::MetricTree) return p;
  return Point(spec.tree().canonical(p.location()));
}

}  // namespace catpursuit
