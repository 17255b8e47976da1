#pragma once

// Reference computations that share no code with the library.

#include "catpursuit/domain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <utility>
#include <vector>

namespace oracle {

using Graph = std::vector<std::vector<std::pair<int, double>>>;

inline std::vector<double> dijkstra(const Graph& g, int src) {
  std::vector<double> dist(g.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(src)] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (auto [w, len] : g[static_cast<std::size_t>(v)]) {
      if (d + len < dist[static_cast<std::size_t>(w)]) {
        dist[static_cast<std::size_t>(w)] = d + len;
        pq.push({d + len, w});
      }
    }
  }
  return dist;
}

inline double point_segment_distance(const Eigen::Vector2d& c, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((c - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - c).norm();
}

// Plane minus open disks: nodes are p, q and `per_circle` equally spaced points
// on every boundary circle; straight edges where the chord misses every open
// disk, arc edges between neighbouring samples. Every graph path is a feasible
// curve, so the result is an upper bound that converges as per_circle grows.
inline double plane_disks_distance(const std::vector<catpursuit::Disk>& disks, const Eigen::Vector2d& p,
                                   const Eigen::Vector2d& q, int per_circle = 720) {
  std::vector<Eigen::Vector2d> nodes{p, q};
  for (const auto& d : disks) {
    for (int k = 0; k < per_circle; ++k) {
      const double a = 2.0 * std::numbers::pi * k / per_circle;
      nodes.push_back(d.center + d.radius * Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
  }
  const int n = static_cast<int>(nodes.size());
  Graph g(static_cast<std::size_t>(n));
  auto clear = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    for (const auto& d : disks) {
      if (point_segment_distance(d.center, a, b) < d.radius * (1.0 - 1e-12)) return false;
    }
    return true;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (clear(nodes[i], nodes[j])) {
        const double len = (nodes[i] - nodes[j]).norm();
        g[i].push_back({j, len});
        g[j].push_back({i, len});
      }
    }
  }
  for (std::size_t c = 0; c < disks.size(); ++c) {
    const double arc = disks[c].radius * 2.0 * std::numbers::pi / per_circle;
    for (int k = 0; k < per_circle; ++k) {
      const int a = 2 + static_cast<int>(c) * per_circle + k;
      const int b = 2 + static_cast<int>(c) * per_circle + (k + 1) % per_circle;
      g[a].push_back({b, arc});
      g[b].push_back({a, arc});
    }
  }
  return dijkstra(g, 0)[1];
}

// Metric tree with the two query locations spliced in as extra vertices.
inline double tree_distance(int vertex_count, const std::vector<catpursuit::TreeEdge>& edges,
                            catpursuit::TreeLocation a, catpursuit::TreeLocation b) {
  Graph g(static_cast<std::size_t>(vertex_count + 2));
  const int na = vertex_count, nb = vertex_count + 1;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const auto& ed = edges[static_cast<std::size_t>(e)];
    // Split points on this edge, sorted by offset.
    std::vector<std::pair<double, int>> stops{{0.0, ed.u}, {ed.length, ed.v}};
    if (a.edge == e) stops.push_back({a.offset, na});
    if (b.edge == e) stops.push_back({b.offset, nb});
    std::sort(stops.begin(), stops.end());
    for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
      const double len = stops[k + 1].first - stops[k].first;
      g[stops[k].second].push_back({stops[k + 1].second, len});
      g[stops[k + 1].second].push_back({stops[k].second, len});
    }
  }
  return dijkstra(g, na)[static_cast<std::size_t>(nb)];
}

inline double sphere_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& q, double R) {
  return R * std::atan2(p.cross(q).norm(), p.dot(q));
}

// Law of cosines, solved for the angle opposite a.
inline double euclid_angle(double a, double b, double c) {
  return std::acos(std::clamp((b * b + c * c - a * a) / (2 * b * c), -1.0, 1.0));
}

inline double spherical_angle(double K, double a, double b, double c) {
  const double s = std::sqrt(K);
  return std::acos(std::clamp(
      (std::cos(a * s) - std::cos(b * s) * std::cos(c * s)) / (std::sin(b * s) * std::sin(c * s)), -1.0, 1.0));
}

// Model triangle drawn explicitly: apex at the origin (or north pole), sides
// b and c at the comparison angle; distance between fractional side points.
inline double model_distance(double K, double a, double b, double c, double s, double u) {
  if (K <= 0.0) {
    const double A = euclid_angle(a, b, c);
    const Eigen::Vector2d x = s * b * Eigen::Vector2d(1, 0);
    const Eigen::Vector2d y = u * c * Eigen::Vector2d(std::cos(A), std::sin(A));
    return (x - y).norm();
  }
  const double k = std::sqrt(K);
  const double A = spherical_angle(K, a, b, c);
  auto at = [&](double len, double az) {
    const double r = len * k;
    return Eigen::Vector3d(std::sin(r) * std::cos(az), std::sin(r) * std::sin(az), std::cos(r));
  };
  return sphere_distance(at(s * b, 0.0), at(u * c, A), 1.0) / k;
}

}  // namespace oracle
