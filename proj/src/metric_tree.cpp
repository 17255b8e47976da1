#include "catpursuit/metric_tree.hpp"

#include "catpursuit/errors.hpp"
#include "catpursuit/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace catpursuit {

MetricTreeIndex::MetricTreeIndex(int vertex_count, std::vector<TreeEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 2) throw Error(ErrorKind::InvalidDomain, "metric tree needs at least two vertices");
  if (static_cast<int>(edges_.size()) != n_ - 1) {
    throw Error(ErrorKind::InvalidDomain, "a tree on " + std::to_string(n_) + " vertices needs " +
                                              std::to_string(n_ - 1) + " edges, got " +
                                              std::to_string(edges_.size()));
  }
  incident_.assign(static_cast<std::size_t>(n_), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_ || e.u == e.v) {
      throw Error(ErrorKind::InvalidDomain, "edge " + std::to_string(i) + " has invalid endpoints");
    }
    if (!(e.length > 0.0)) {
      throw Error(ErrorKind::InvalidDomain, "edge " + std::to_string(i) + " has nonpositive length");
    }
    incident_[static_cast<std::size_t>(e.u)].push_back(static_cast<int>(i));
    incident_[static_cast<std::size_t>(e.v)].push_back(static_cast<int>(i));
  }

  const auto nn = static_cast<std::size_t>(n_);
  dist_.assign(nn * nn, std::numeric_limits<double>::infinity());
  next_.assign(nn * nn, -1);
  for (int src = 0; src < n_; ++src) {
    // BFS; in a tree the first visit is the unique path. first_edge tracks
    // the edge leaving src on that path.
    std::queue<int> frontier;
    dist_[index(src, src)] = 0.0;
    frontier.push(src);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int eid : incident_[static_cast<std::size_t>(v)]) {
        const auto& e = edges_[static_cast<std::size_t>(eid)];
        const int w = (e.u == v) ? e.v : e.u;
        if (std::isfinite(dist_[index(src, w)])) continue;
        dist_[index(src, w)] = dist_[index(src, v)] + e.length;
        next_[index(src, w)] = (v == src) ? eid : next_[index(src, v)];
        frontier.push(w);
      }
    }
    for (int w = 0; w < n_; ++w) {
      if (!std::isfinite(dist_[index(src, w)])) {
        throw Error(ErrorKind::InvalidDomain, "tree is disconnected");
      }
    }
  }
}

std::optional<int> MetricTreeIndex::vertex_at(const TreeLocation& loc) const {
  const auto& e = edge(loc.edge);
  if (loc.offset <= tol::point) return e.u;
  if (loc.offset >= e.length - tol::point) return e.v;
  return std::nullopt;
}

TreeLocation MetricTreeIndex::at_vertex(int vertex) const {
  const auto& inc = incident(vertex);
  const int eid = *std::min_element(inc.begin(), inc.end());
  const auto& e = edge(eid);
  return {eid, e.u == vertex ? 0.0 : e.length};
}

TreeLocation MetricTreeIndex::canonical(const TreeLocation& loc) const {
  if (auto v = vertex_at(loc)) return at_vertex(*v);
  return loc;
}

bool MetricTreeIndex::valid(const TreeLocation& loc) const {
  if (loc.edge < 0 || loc.edge >= edge_count()) return false;
  return loc.offset >= -tol::point && loc.offset <= edge(loc.edge).length + tol::point;
}

double MetricTreeIndex::distance(const TreeLocation& a, const TreeLocation& b) const {
  const auto va = vertex_at(a);
  const auto vb = vertex_at(b);
  if (!va && !vb && a.edge == b.edge) return std::abs(a.offset - b.offset);
  // Distance from a location to each endpoint it can leave through.
  struct Exit {
    int vertex;
    double cost;
  };
  auto exits = [this](const TreeLocation& loc, std::optional<int> v) {
    std::vector<Exit> out;
    if (v) {
      out.push_back({*v, 0.0});
    } else {
      const auto& e = edge(loc.edge);
      out.push_back({e.u, loc.offset});
      out.push_back({e.v, e.length - loc.offset});
    }
    return out;
  };
  if (va && !vb) {
    const auto& e = edge(b.edge);
    if (e.u == *va) return b.offset;
    if (e.v == *va) return e.length - b.offset;
  }
  if (vb && !va) {
    const auto& e = edge(a.edge);
    if (e.u == *vb) return a.offset;
    if (e.v == *vb) return e.length - a.offset;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : exits(a, va)) {
    for (const auto& y : exits(b, vb)) {
      best = std::min(best, x.cost + vertex_distance(x.vertex, y.vertex) + y.cost);
    }
  }
  return best;
}

GeodesicPath MetricTreeIndex::shortest_path(const TreeLocation& a, const TreeLocation& b) const {
  GeodesicPath path;
  path.start = Point(canonical(a));
  path.finish = Point(canonical(b));
  const auto va = vertex_at(a);
  const auto vb = vertex_at(b);
  auto push = [&path](int eid, double from, double to) {
    if (std::abs(to - from) <= 0.0) return;
    path.pieces.emplace_back(TreeSegment{eid, from, to});
    path.length += std::abs(to - from);
  };

  if (!va && !vb && a.edge == b.edge) {
    push(a.edge, a.offset, b.offset);
    return path;
  }

  // Pick the exit vertex of each location that lies on the geodesic.
  int from_vertex = -1;
  if (va) {
    from_vertex = *va;
  } else {
    const auto& e = edge(a.edge);
    const double via_u = a.offset + distance(TreeLocation{a.edge, 0.0}, b);
    const double via_v = (e.length - a.offset) + distance(TreeLocation{a.edge, e.length}, b);
    if (via_u <= via_v) {
      from_vertex = e.u;
      push(a.edge, a.offset, 0.0);
    } else {
      from_vertex = e.v;
      push(a.edge, a.offset, e.length);
    }
  }
  int to_vertex = -1;
  double to_from_offset = 0.0;
  if (vb) {
    to_vertex = *vb;
  } else {
    const auto& e = edge(b.edge);
    const double via_u = vertex_distance(from_vertex, e.u) + b.offset;
    const double via_v = vertex_distance(from_vertex, e.v) + (e.length - b.offset);
    if (via_u <= via_v) {
      to_vertex = e.u;
      to_from_offset = 0.0;
    } else {
      to_vertex = e.v;
      to_from_offset = e.length;
    }
  }
  int v = from_vertex;
  while (v != to_vertex) {
    const int eid = next_edge(v, to_vertex);
    const auto& e = edge(eid);
    if (e.u == v) {
      push(eid, 0.0, e.length);
      v = e.v;
    } else {
      push(eid, e.length, 0.0);
      v = e.u;
    }
  }
  if (!vb) push(b.edge, to_from_offset, b.offset);
  return path;
}

}  // namespace catpursuit
