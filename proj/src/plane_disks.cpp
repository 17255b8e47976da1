#include "catpursuit/plane_disks.hpp"

#include "catpursuit/errors.hpp"
#include "catpursuit/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace catpursuit::plane_disks {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxCandidates = 16;

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

double angle_of(const Disk& disk, const Eigen::Vector2d& p) {
  const Eigen::Vector2d v = p - disk.center;
  return std::atan2(v.y(), v.x());
}

double segment_point_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (c - a).norm();
  const double t = std::clamp((c - a).dot(ab) / len2, 0.0, 1.0);
  return (a + t * ab - c).norm();
}

struct Node {
  Eigen::Vector2d pos;
  int circle = -1;
  double angle = 0.0;
};

struct Edge {
  int to = 0;
  double weight = 0.0;
  int circle = -1;  // -1 for straight segments
  int orientation = 0;
};

class VisibilityGraph {
 public:
  VisibilityGraph(const std::vector<Disk>& disks, const Eigen::Vector2d& p, const Eigen::Vector2d& q)
      : disks_(disks) {
    // Endpoints stay distinct nodes 0 and 1 even when they nearly coincide.
    add_node(p, on_any_circle(p), false);
    add_node(q, on_any_circle(q), false);

    link_straight(0, 1);
    for (int endpoint : {0, 1}) {
      const Eigen::Vector2d x = nodes_[static_cast<std::size_t>(endpoint)].pos;
      for (std::size_t i = 0; i < disks_.size(); ++i) {
        if (on_circle(disks_[i], x)) continue;
        for (const auto& t : tangent_points(disks_[i], x)) {
          link_straight(endpoint, add_node(t, static_cast<int>(i)));
        }
      }
    }
    for (std::size_t i = 0; i < disks_.size(); ++i) {
      for (std::size_t j = i + 1; j < disks_.size(); ++j) add_bitangents(static_cast<int>(i), static_cast<int>(j));
    }
    add_arcs();
  }

  std::vector<double> dijkstra(int source) const {
    std::vector<double> dist(nodes_.size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(source)] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      for (const auto& e : adj_[static_cast<std::size_t>(u)]) {
        const double nd = d + e.weight;
        if (nd < dist[static_cast<std::size_t>(e.to)]) {
          dist[static_cast<std::size_t>(e.to)] = nd;
          heap.emplace(nd, e.to);
        }
      }
    }
    return dist;
  }

  /// Every node/edge sequence from p to q whose length is within `slack` of
  /// the optimum.
  std::vector<std::vector<std::pair<int, const Edge*>>> tight_routes(double slack) const {
    const auto from_p = dijkstra(0);
    const auto to_q = dijkstra(1);
    const double best = from_p[1];
    std::vector<std::vector<std::pair<int, const Edge*>>> routes;
    std::vector<std::pair<int, const Edge*>> stack;
    std::vector<char> on_stack(nodes_.size(), 0);
    auto dfs = [&](auto&& self, int u) -> void {
      if (static_cast<int>(routes.size()) >= kMaxCandidates) return;
      if (u == 1) {
        routes.push_back(stack);
        return;
      }
      on_stack[static_cast<std::size_t>(u)] = 1;
      for (const auto& e : adj_[static_cast<std::size_t>(u)]) {
        if (on_stack[static_cast<std::size_t>(e.to)]) continue;
        if (from_p[static_cast<std::size_t>(u)] + e.weight + to_q[static_cast<std::size_t>(e.to)] > best + slack) {
          continue;
        }
        stack.emplace_back(u, &e);
        self(self, e.to);
        stack.pop_back();
      }
      on_stack[static_cast<std::size_t>(u)] = 0;
    };
    if (std::isfinite(best)) dfs(dfs, 0);
    return routes;
  }

  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<Disk>& disks() const { return disks_; }

 private:
  int on_any_circle(const Eigen::Vector2d& x) const {
    for (std::size_t i = 0; i < disks_.size(); ++i) {
      if (on_circle(disks_[i], x)) return static_cast<int>(i);
    }
    return -1;
  }

  int add_node(const Eigen::Vector2d& pos, int circle, bool merge = true) {
    if (merge && circle >= 0) {
      for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (nodes_[k].circle == circle && (nodes_[k].pos - pos).norm() <= 1e-12) return static_cast<int>(k);
      }
    }
    Node n{pos, circle, circle >= 0 ? angle_of(disks_[static_cast<std::size_t>(circle)], pos) : 0.0};
    nodes_.push_back(n);
    adj_.emplace_back();
    return static_cast<int>(nodes_.size()) - 1;
  }

  void link_straight(int a, int b) {
    if (a == b) return;
    const auto& pa = nodes_[static_cast<std::size_t>(a)].pos;
    const auto& pb = nodes_[static_cast<std::size_t>(b)].pos;
    if (!segment_clear(disks_, pa, pb)) return;
    const double w = (pa - pb).norm();
    if (!(w > 0.0)) return;
    adj_[static_cast<std::size_t>(a)].push_back({b, w, -1, 0});
    adj_[static_cast<std::size_t>(b)].push_back({a, w, -1, 0});
  }

  void add_bitangents(int i, int j) {
    const Disk& a = disks_[static_cast<std::size_t>(i)];
    const Disk& b = disks_[static_cast<std::size_t>(j)];
    const Eigen::Vector2d v = b.center - a.center;
    const double d2 = v.squaredNorm();
    // Lines n.x + k = 0 with n.c_a + k = r_a and n.c_b + k = s*r_b.
    for (int s : {1, -1}) {
      const double dr = s * b.radius - a.radius;
      const double h2 = d2 - dr * dr;
      if (h2 < 0.0) continue;
      const double h = std::sqrt(h2);
      const Eigen::Vector2d perp(-v.y(), v.x());
      for (int sign : {1, -1}) {
        const Eigen::Vector2d n = (v * dr + sign * perp * h) / d2;
        const Eigen::Vector2d ta = a.center - a.radius * n;
        const Eigen::Vector2d tb = b.center - s * b.radius * n;
        link_straight(add_node(ta, i), add_node(tb, j));
      }
    }
  }

  void add_arcs() {
    for (std::size_t c = 0; c < disks_.size(); ++c) {
      std::vector<int> on;
      for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (nodes_[k].circle == static_cast<int>(c)) on.push_back(static_cast<int>(k));
      }
      if (on.size() < 2) continue;
      std::sort(on.begin(), on.end(), [this](int x, int y) {
        return nodes_[static_cast<std::size_t>(x)].angle < nodes_[static_cast<std::size_t>(y)].angle;
      });
      const double r = disks_[c].radius;
      for (std::size_t k = 0; k < on.size(); ++k) {
        const int a = on[k];
        const int b = on[(k + 1) % on.size()];
        double sweep = nodes_[static_cast<std::size_t>(b)].angle - nodes_[static_cast<std::size_t>(a)].angle;
        if (k + 1 == on.size()) sweep += kTwoPi;
        const double w = r * sweep;
        adj_[static_cast<std::size_t>(a)].push_back({b, w, static_cast<int>(c), 1});
        adj_[static_cast<std::size_t>(b)].push_back({a, w, static_cast<int>(c), -1});
      }
    }
  }

  std::vector<Disk> disks_;
  std::vector<Node> nodes_;
  std::vector<std::vector<Edge>> adj_;
};

Eigen::VectorXd vec(const Eigen::Vector2d& v) { return Eigen::VectorXd(v); }

GeodesicPath assemble(const VisibilityGraph& g, const std::vector<std::pair<int, const Edge*>>& route) {
  GeodesicPath path;
  path.start = Point(vec(g.node(0).pos));
  path.finish = Point(vec(g.node(1).pos));
  for (const auto& [from, edge] : route) {
    const Node& a = g.node(from);
    const Node& b = g.node(edge->to);
    if (edge->circle < 0) {
      path.pieces.emplace_back(LinePiece{vec(a.pos), vec(b.pos)});
    } else {
      const Disk& disk = g.disks()[static_cast<std::size_t>(edge->circle)];
      const double sweep = edge->weight / disk.radius;
      const double start = angle_of(disk, a.pos);
      auto* prev = path.pieces.empty() ? nullptr : std::get_if<ArcPiece>(&path.pieces.back());
      if (prev && prev->center == disk.center && prev->orientation == edge->orientation) {
        prev->end_angle += edge->orientation * sweep;
      } else {
        path.pieces.emplace_back(ArcPiece{disk.center, disk.radius, start, start + edge->orientation * sweep,
                                          edge->orientation});
      }
    }
  }
  std::erase_if(path.pieces, [](const PathPiece& piece) { return piece_length(piece) <= 1e-14; });
  for (const auto& piece : path.pieces) path.length += piece_length(piece);
  return path;
}

Eigen::Vector2d piece_point(const PathPiece& piece, double s) {
  if (const auto* line = std::get_if<LinePiece>(&piece)) {
    const double len = (line->to - line->from).norm();
    if (len == 0.0) return line->from;
    return line->from + (line->to - line->from) * (s / len);
  }
  return arc_point(std::get<ArcPiece>(piece), s);
}

Eigen::Vector2d path_point(const GeodesicPath& path, double s) {
  for (const auto& piece : path.pieces) {
    const double len = piece_length(piece);
    if (s <= len) return piece_point(piece, s);
    s -= len;
  }
  return path.finish.coords();
}

bool same_geometry(const GeodesicPath& a, const GeodesicPath& b) {
  constexpr int kSamples = 16;
  for (int k = 0; k <= kSamples; ++k) {
    const double f = static_cast<double>(k) / kSamples;
    if ((path_point(a, f * a.length) - path_point(b, f * b.length)).norm() > 1e-7) return false;
  }
  return true;
}

}  // namespace

bool on_circle(const Disk& disk, const Eigen::Vector2d& p) {
  return std::abs((p - disk.center).norm() - disk.radius) <= tol::geometric * std::max(1.0, disk.radius);
}

bool segment_clear(const std::vector<Disk>& disks, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double len = (b - a).norm();
  if (len == 0.0) return true;
  for (const auto& disk : disks) {
    const bool on_a = on_circle(disk, a);
    const bool on_b = on_circle(disk, b);
    if (on_a && on_b) return false;  // open chord lies inside the disk
    if (on_a) {
      if ((b - a).dot(a - disk.center) < -tol::geometric * len * disk.radius) return false;
      continue;
    }
    if (on_b) {
      if ((a - b).dot(b - disk.center) < -tol::geometric * len * disk.radius) return false;
      continue;
    }
    if (segment_point_distance(a, b, disk.center) < disk.radius * (1.0 - tol::geometric)) return false;
  }
  return true;
}

std::vector<Eigen::Vector2d> tangent_points(const Disk& disk, const Eigen::Vector2d& p) {
  if (on_circle(disk, p)) return {p};
  const Eigen::Vector2d v = p - disk.center;
  const double d = v.norm();
  if (d < disk.radius) return {};
  const double base = std::atan2(v.y(), v.x());
  const double off = std::acos(std::clamp(disk.radius / d, -1.0, 1.0));
  return {disk.center + disk.radius * Eigen::Vector2d(std::cos(base + off), std::sin(base + off)),
          disk.center + disk.radius * Eigen::Vector2d(std::cos(base - off), std::sin(base - off))};
}

std::vector<GeodesicPath> shortest_candidates(const std::vector<Disk>& disks, const Eigen::Vector2d& p,
                                              const Eigen::Vector2d& q) {
  if ((p - q).norm() == 0.0) {
    GeodesicPath path;
    path.start = Point(vec(p));
    path.finish = Point(vec(q));
    return {path};
  }
  if (segment_clear(disks, p, q)) {
    GeodesicPath path;
    path.start = Point(vec(p));
    path.finish = Point(vec(q));
    path.pieces.emplace_back(LinePiece{vec(p), vec(q)});
    path.length = (p - q).norm();
    return {path};
  }
  const VisibilityGraph graph(disks, p, q);
  const double best = graph.dijkstra(0)[1];
  if (!std::isfinite(best)) throw Error(ErrorKind::InvalidPoint, "no path between the points");
  const double slack = tol::geometric * std::max(1.0, best);
  std::vector<GeodesicPath> out;
  for (const auto& route : graph.tight_routes(slack)) {
    GeodesicPath candidate = assemble(graph, route);
    const bool duplicate =
        std::any_of(out.begin(), out.end(), [&](const GeodesicPath& g) { return same_geometry(g, candidate); });
    if (!duplicate) out.push_back(std::move(candidate));
  }
  std::sort(out.begin(), out.end(),
            [](const GeodesicPath& a, const GeodesicPath& b) { return left_offset(a) > left_offset(b); });
  return out;
}

double distance(const std::vector<Disk>& disks, const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  if (segment_clear(disks, p, q)) return (p - q).norm();
  const VisibilityGraph graph(disks, p, q);
  return graph.dijkstra(0)[1];
}

double left_offset(const GeodesicPath& path) {
  if (path.pieces.empty()) return 0.0;
  const Eigen::Vector2d p = path.start.coords();
  const Eigen::Vector2d q = path.finish.coords();
  const Eigen::Vector2d chord = q - p;
  if (chord.norm() == 0.0) return 0.0;
  const Eigen::Vector2d u = chord.normalized();
  constexpr int kSamples = 64;
  double sum = 0.0;
  for (int k = 0; k <= kSamples; ++k) {
    const double w = (k == 0 || k == kSamples) ? 0.5 : 1.0;
    sum += w * cross(u, path_point(path, path.length * k / kSamples) - p);
  }
  return sum * path.length / kSamples;
}

Eigen::Vector2d arc_point(const ArcPiece& arc, double s) {
  const double theta = arc.start_angle + arc.orientation * s / arc.radius;
  return arc.center + arc.radius * Eigen::Vector2d(std::cos(theta), std::sin(theta));
}

}  // namespace catpursuit::plane_disks
