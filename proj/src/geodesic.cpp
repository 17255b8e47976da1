#include "catpursuit/geodesic.hpp"

#include "catpursuit/metric_tree.hpp"
#include "catpursuit/plane_disks.hpp"
#include "catpursuit/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace catpursuit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Point piece_point(const DomainSpec& spec, const PathPiece& piece, double s) {
  return std::visit(
      overloaded{
          [&](const LinePiece& line) {
            const double len = (line.to - line.from).norm();
            if (len == 0.0) return Point(line.from);
            return Point(Eigen::VectorXd(line.from + (line.to - line.from) * (s / len)));
          },
          [&](const ArcPiece& arc) { return Point(Eigen::VectorXd(plane_disks::arc_point(arc, s))); },
          [&](const GreatCirclePiece& gc) {
            const double a = s / gc.radius;
            return Point(Eigen::VectorXd(std::cos(a) * gc.from + std::sin(a) * gc.radius * gc.tangent));
          },
          [&](const TreeSegment& seg) {
            const double sense = seg.to_offset >= seg.from_offset ? 1.0 : -1.0;
            return canonical(spec, Point::on_tree(seg.edge, seg.from_offset + sense * s));
          },
      },
      piece);
}

Direction piece_direction(const PathPiece& piece, double s) {
  return std::visit(overloaded{
                        [&](const LinePiece& line) {
                          return Direction{(line.to - line.from).normalized(), -1, 0};
                        },
                        [&](const ArcPiece& arc) {
                          const double theta = arc.start_angle + arc.orientation * s / arc.radius;
                          const Eigen::Vector2d t =
                              arc.orientation * Eigen::Vector2d(-std::sin(theta), std::cos(theta));
                          return Direction{Eigen::VectorXd(t), -1, 0};
                        },
                        [&](const GreatCirclePiece& gc) {
                          const double a = s / gc.radius;
                          const Eigen::Vector3d t = -std::sin(a) * gc.from / gc.radius + std::cos(a) * gc.tangent;
                          return Direction{Eigen::VectorXd(t.normalized()), -1, 0};
                        },
                        [&](const TreeSegment& seg) {
                          return Direction{Eigen::VectorXd(), seg.edge, seg.to_offset >= seg.from_offset ? 1 : -1};
                        },
                    },
                    piece);
}

PathPiece piece_reversed(const PathPiece& piece) {
  return std::visit(overloaded{
                        [](const LinePiece& line) -> PathPiece { return LinePiece{line.to, line.from}; },
                        [](const ArcPiece& arc) -> PathPiece {
                          return ArcPiece{arc.center, arc.radius, arc.end_angle, arc.start_angle, -arc.orientation};
                        },
                        [](const GreatCirclePiece& gc) -> PathPiece {
                          const double a = gc.length / gc.radius;
                          const Eigen::Vector3d end = std::cos(a) * gc.from + std::sin(a) * gc.radius * gc.tangent;
                          const Eigen::Vector3d t = -std::sin(a) * gc.from / gc.radius + std::cos(a) * gc.tangent;
                          return GreatCirclePiece{end, -t.normalized(), gc.radius, gc.length};
                        },
                        [](const TreeSegment& seg) -> PathPiece {
                          return TreeSegment{seg.edge, seg.to_offset, seg.from_offset};
                        },
                    },
                    piece);
}

PathPiece piece_restricted(const PathPiece& piece, double s0, double s1) {
  return std::visit(
      overloaded{
          [&](const LinePiece& line) -> PathPiece {
            const double len = (line.to - line.from).norm();
            const Eigen::VectorXd d = (line.to - line.from) / len;
            return LinePiece{line.from + d * s0, line.from + d * s1};
          },
          [&](const ArcPiece& arc) -> PathPiece {
            return ArcPiece{arc.center, arc.radius, arc.start_angle + arc.orientation * s0 / arc.radius,
                            arc.start_angle + arc.orientation * s1 / arc.radius, arc.orientation};
          },
          [&](const GreatCirclePiece& gc) -> PathPiece {
            const double a = s0 / gc.radius;
            const Eigen::Vector3d from = std::cos(a) * gc.from + std::sin(a) * gc.radius * gc.tangent;
            const Eigen::Vector3d t = -std::sin(a) * gc.from / gc.radius + std::cos(a) * gc.tangent;
            return GreatCirclePiece{from, t.normalized(), gc.radius, s1 - s0};
          },
          [&](const TreeSegment& seg) -> PathPiece {
            const double sense = seg.to_offset >= seg.from_offset ? 1.0 : -1.0;
            return TreeSegment{seg.edge, seg.from_offset + sense * s0, seg.from_offset + sense * s1};
          },
      },
      piece);
}

GeodesicPath line_path(const Point& p, const Point& q) {
  GeodesicPath path;
  path.start = p;
  path.finish = q;
  const double len = (q.coords() - p.coords()).norm();
  if (len > 0.0) {
    path.pieces.emplace_back(LinePiece{p.coords(), q.coords()});
    path.length = len;
  }
  return path;
}

struct SphereFrame {
  Eigen::Vector3d a;
  Eigen::Vector3d b;
  double sin_angle;
  double cos_angle;
};

SphereFrame sphere_frame(const Point& p, const Point& q) {
  const Eigen::Vector3d a = Eigen::Vector3d(p.coords()).normalized();
  const Eigen::Vector3d b = Eigen::Vector3d(q.coords()).normalized();
  return {a, b, a.cross(b).norm(), a.dot(b)};
}

constexpr double kAntipodalSin = 1e-9;

GeodesicPath sphere_path(const DomainSpec& spec, const Point& p, const Point& q, TieBreak tb) {
  const double R = spec.sphere_radius();
  const auto f = sphere_frame(p, q);
  GeodesicPath path;
  path.start = p;
  path.finish = q;
  const double angle = std::atan2(f.sin_angle, f.cos_angle);
  if (angle == 0.0) return path;
  if (f.sin_angle <= kAntipodalSin && f.cos_angle < 0.0) {
    Eigen::Vector3d up = Eigen::Vector3d::UnitZ() - Eigen::Vector3d::UnitZ().dot(f.a) * f.a;
    if (up.norm() < 1e-6) up = Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitX().dot(f.a) * f.a;
    up.normalize();
    auto make = [&](const Eigen::Vector3d& t) {
      GeodesicPath g = path;
      g.pieces.emplace_back(GreatCirclePiece{f.a * R, t, R, std::numbers::pi * R});
      g.length = std::numbers::pi * R;
      return g;
    };
    switch (tb.resolved()) {
      case TieBreak::Mode::Upper: return make(up);
      case TieBreak::Mode::Lower: return make(-up);
      default:
        throw AmbiguityError("antipodal sphere points are joined by infinitely many geodesics",
                             {make(up), make(-up)});
    }
  }
  const Eigen::Vector3d t = (f.b - f.cos_angle * f.a).normalized();
  path.pieces.emplace_back(GreatCirclePiece{f.a * R, t, R, angle * R});
  path.length = angle * R;
  return path;
}

GeodesicPath disk_path(const DomainSpec& spec, const Point& p, const Point& q, TieBreak tb) {
  auto candidates = plane_disks::shortest_candidates(spec.disks(), p.coords(), q.coords());
  if (candidates.size() == 1) return std::move(candidates.front());
  // Candidates are sorted by decreasing left offset.
  switch (tb.resolved()) {
    case TieBreak::Mode::Upper: return std::move(candidates.front());
    case TieBreak::Mode::Lower: return std::move(candidates.back());
    default: {
      std::ostringstream os;
      os << candidates.size() << " shortest paths of length " << candidates.front().length
         << " wrap differently around the removed disks";
      throw AmbiguityError(os.str(), std::move(candidates));
    }
  }
}

}  // namespace

double piece_length(const PathPiece& piece) {
  return std::visit(overloaded{
                        [](const LinePiece& line) { return (line.to - line.from).norm(); },
                        [](const ArcPiece& arc) { return arc.radius * std::abs(arc.end_angle - arc.start_angle); },
                        [](const GreatCirclePiece& gc) { return gc.length; },
                        [](const TreeSegment& seg) { return std::abs(seg.to_offset - seg.from_offset); },
                    },
                    piece);
}

double angle_between(const Direction& a, const Direction& b) {
  if (a.on_tree() || b.on_tree()) {
    return (a.edge == b.edge && a.sense == b.sense) ? 0.0 : std::numbers::pi;
  }
  return 2.0 * std::atan2((a.tangent - b.tangent).norm(), (a.tangent + b.tangent).norm());
}

Direction opposite(Direction d) {
  if (d.on_tree()) {
    d.sense = -d.sense;
  } else {
    d.tangent = -d.tangent;
  }
  return d;
}

double distance(const DomainSpec& spec, const Point& p, const Point& q) {
  validate_point(spec, p);
  validate_point(spec, q);
  switch (spec.kind()) {
    case DomainKind::Euclidean:
    case DomainKind::ConvexRegion: return (p.coords() - q.coords()).norm();
    case DomainKind::Sphere: {
      const auto f = sphere_frame(p, q);
      return spec.sphere_radius() * std::atan2(f.sin_angle, f.cos_angle);
    }
    case DomainKind::PlaneMinusDisks: return plane_disks::distance(spec.disks(), p.coords(), q.coords());
    case DomainKind::MetricTree: return spec.tree().distance(p.location(), q.location());
  }
  return 0.0;
}

GeodesicPath shortest_path(const DomainSpec& spec, const Point& p, const Point& q, TieBreak tie_break) {
  validate_point(spec, p);
  validate_point(spec, q);
  switch (spec.kind()) {
    case DomainKind::Euclidean:
    case DomainKind::ConvexRegion: return line_path(p, q);
    case DomainKind::Sphere: return sphere_path(spec, p, q, tie_break);
    case DomainKind::PlaneMinusDisks: return disk_path(spec, p, q, tie_break);
    case DomainKind::MetricTree: return spec.tree().shortest_path(p.location(), q.location());
  }
  return {};
}

Point point_along(const DomainSpec& spec, const GeodesicPath& path, double s) {
  if (s < -tol::point || s > path.length + tol::point * std::max(1.0, path.length)) {
    std::ostringstream os;
    os << "arclength " << s << " outside [0, " << path.length << "]";
    throw Error(ErrorKind::Range, os.str());
  }
  s = std::clamp(s, 0.0, path.length);
  if (s == 0.0) return path.start;
  if (s == path.length) return path.finish;
  for (const auto& piece : path.pieces) {
    const double len = piece_length(piece);
    if (s <= len) return piece_point(spec, piece, s);
    s -= len;
  }
  return path.finish;
}

Direction direction_at(const DomainSpec&, const GeodesicPath& path, PathEnd end) {
  if (path.pieces.empty()) throw Error(ErrorKind::Degenerate, "zero-length path has no direction");
  if (end == PathEnd::Start) return piece_direction(path.pieces.front(), 0.0);
  const auto& last = path.pieces.back();
  return piece_direction(last, piece_length(last));
}

double angle_at(const DomainSpec& spec, const Point& p, const Point& q, const Point& r, TieBreak tie_break) {
  const auto pq = shortest_path(spec, p, q, tie_break);
  const auto pr = shortest_path(spec, p, r, tie_break);
  if (pq.empty() || pr.empty()) throw Error(ErrorKind::Degenerate, "angle needs q != p and r != p");
  return angle_between(direction_at(spec, pq, PathEnd::Start), direction_at(spec, pr, PathEnd::Start));
}

GeodesicPath reversed(const GeodesicPath& path) {
  GeodesicPath out;
  out.start = path.finish;
  out.finish = path.start;
  out.length = path.length;
  out.pieces.reserve(path.pieces.size());
  for (auto it = path.pieces.rbegin(); it != path.pieces.rend(); ++it) out.pieces.push_back(piece_reversed(*it));
  return out;
}

GeodesicPath subpath(const DomainSpec& spec, const GeodesicPath& path, double s0, double s1) {
  if (s0 > s1) throw Error(ErrorKind::Range, "subpath bounds out of order");
  GeodesicPath out;
  out.start = point_along(spec, path, s0);
  out.finish = point_along(spec, path, s1);
  s0 = std::clamp(s0, 0.0, path.length);
  s1 = std::clamp(s1, 0.0, path.length);
  double offset = 0.0;
  for (const auto& piece : path.pieces) {
    const double len = piece_length(piece);
    const double a = std::max(s0 - offset, 0.0);
    const double b = std::min(s1 - offset, len);
    if (b - a > 1e-14) {
      out.pieces.push_back(piece_restricted(piece, a, b));
      out.length += b - a;
    }
    offset += len;
  }
  return out;
}

std::vector<Point> sample_path(const DomainSpec& spec, const GeodesicPath& path, int count) {
  if (count < 2) throw Error(ErrorKind::Configuration, "need at least two samples");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out.push_back(point_along(spec, path, path.length * k / (count - 1)));
  }
  return out;
}

bool same_point(const DomainSpec& spec, const Point& p, const Point& q, double tolerance) {
  return distance(spec, p, q) <= tolerance;
}

JunctionResidual junction_residual(const DomainSpec& spec, const GeodesicPath& path) {
  JunctionResidual r;
  for (std::size_t k = 0; k + 1 < path.pieces.size(); ++k) {
    const auto& a = path.pieces[k];
    const auto& b = path.pieces[k + 1];
    const double len = piece_length(a);
    r.gap = std::max(r.gap, distance(spec, piece_point(spec, a, len), piece_point(spec, b, 0.0)));
    const double interior = angle_between(opposite(piece_direction(a, len)), piece_direction(b, 0.0));
    r.turn = std::max(r.turn, std::numbers::pi - interior);
  }
  return r;
}

}  // namespace catpursuit
