#include "catpursuit/winding.hpp"

#include "catpursuit/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace catpursuit {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Bitangent {
  double from_angle;  // tangent point angles on the two circles
  double to_angle;
  Eigen::Vector2d from;
  Eigen::Vector2d to;
};

/// Segment leaving `a` and arriving at `b` with both circles on its left,
/// i.e. counterclockwise travel on each.
Bitangent ccw_bitangent(const Disk& a, const Disk& b) {
  const Eigen::Vector2d v = b.center - a.center;
  const double psi = std::atan2(v.y(), v.x());
  const double spread = std::acos((b.radius - a.radius) / v.norm());
  for (double phi : {psi + spread, psi - spread}) {
    const Eigen::Vector2d n(std::cos(phi), std::sin(phi));  // left normal of travel
    const Eigen::Vector2d u(n.y(), -n.x());
    if (u.dot(v) <= 0.0) continue;
    Bitangent bt;
    bt.from = a.center - a.radius * n;
    bt.to = b.center - b.radius * n;
    bt.from_angle = phi + std::numbers::pi;
    bt.to_angle = phi + std::numbers::pi;
    return bt;
  }
  throw Error(ErrorKind::Degenerate, "no counterclockwise bitangent");
}

Eigen::Vector2d ccw_tangent(double angle) { return {-std::sin(angle), std::cos(angle)}; }

double ccw_sweep(double from, double to) {
  double s = std::fmod(to - from, two_pi);
  if (s < 0.0) s += two_pi;
  if (s > two_pi - 1e-12) s = 0.0;
  return s;
}

}  // namespace

GeodesicPath build_winding_geodesic(const DomainSpec& spec, std::span<const int> word, double lead) {
  if (spec.kind() != DomainKind::PlaneMinusDisks || spec.disks().size() != 2) {
    throw Error(ErrorKind::InvalidDomain, "winding geodesics need a plane with exactly two disks removed");
  }
  if (word.empty()) throw Error(ErrorKind::Precondition, "empty winding word");
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] != 1 && word[i] != 2) {
      throw Error(ErrorKind::Precondition, "letter " + std::to_string(i) + " is not 1 or 2");
    }
  }
  if (!(lead > 0.0)) throw Error(ErrorKind::Precondition, "lead length must be positive");

  struct Run {
    int disk;
    int count;
    double in_angle = 0.0;
    double out_angle = 0.0;
  };
  std::vector<Run> runs;
  for (int letter : word) {
    if (!runs.empty() && runs.back().disk == letter - 1) {
      ++runs.back().count;
    } else {
      runs.push_back({letter - 1, 1});
    }
  }
  const auto& disks = spec.disks();

  std::vector<Bitangent> links;
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    links.push_back(ccw_bitangent(disks[static_cast<std::size_t>(runs[k].disk)],
                                  disks[static_cast<std::size_t>(runs[k + 1].disk)]));
    runs[k].out_angle = links.back().from_angle;
    runs[k + 1].in_angle = links.back().to_angle;
  }
  // Open ends: enter where the first link leaves, leave where the last one
  // arrives; a single run touches the bottom of its circle.
  if (runs.size() == 1) {
    runs[0].in_angle = runs[0].out_angle = -0.5 * std::numbers::pi;
  } else {
    runs.front().in_angle = runs.front().out_angle;
    runs.back().out_angle = runs.back().in_angle;
  }

  GeodesicPath path;
  auto add_line = [&path](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    path.pieces.emplace_back(LinePiece{Eigen::VectorXd(a), Eigen::VectorXd(b)});
    path.length += (b - a).norm();
  };

  const Disk& first = disks[static_cast<std::size_t>(runs.front().disk)];
  const Eigen::Vector2d entry =
      first.center + first.radius * Eigen::Vector2d(std::cos(runs.front().in_angle), std::sin(runs.front().in_angle));
  const Eigen::Vector2d start = entry - lead * ccw_tangent(runs.front().in_angle);
  add_line(start, entry);

  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Disk& d = disks[static_cast<std::size_t>(runs[k].disk)];
    const double sweep = ccw_sweep(runs[k].in_angle, runs[k].out_angle) + two_pi * (runs[k].count - 1);
    if (sweep > 0.0) {
      path.pieces.emplace_back(ArcPiece{d.center, d.radius, runs[k].in_angle, runs[k].in_angle + sweep, 1});
      path.length += d.radius * sweep;
    }
    if (k < links.size()) add_line(links[k].from, links[k].to);
  }

  const Disk& last = disks[static_cast<std::size_t>(runs.back().disk)];
  const Eigen::Vector2d exit =
      last.center + last.radius * Eigen::Vector2d(std::cos(runs.back().out_angle), std::sin(runs.back().out_angle));
  add_line(exit, exit + lead * ccw_tangent(runs.back().out_angle));

  path.start = Point(Eigen::VectorXd(start));
  path.finish = Point(Eigen::VectorXd(exit + lead * ccw_tangent(runs.back().out_angle)));
  return path;
}

}  // namespace catpursuit
