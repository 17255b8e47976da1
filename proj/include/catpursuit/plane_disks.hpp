#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/geodesic.hpp"

#include <Eigen/Dense>

#include <vector>

/// Shortest paths in the plane with disjoint open disks removed, computed on
/// the tangent-visibility graph: point-to-circle tangents, circle-to-circle
/// bitangents, and boundary arcs between consecutive tangent points. Lengths
/// are exact segment and arc lengths.
namespace catpursuit::plane_disks {

bool on_circle(const Disk& disk, const Eigen::Vector2d& p);

/// True when the closed segment a-b avoids every open disk. A segment with an
/// endpoint on a boundary circle must leave that circle outward or tangentially.
bool segment_clear(const std::vector<Disk>& disks, const Eigen::Vector2d& a, const Eigen::Vector2d& b);

/// Tangent points on `disk` seen from `p` (p itself when p lies on the circle,
/// none when p is inside).
std::vector<Eigen::Vector2d> tangent_points(const Disk& disk, const Eigen::Vector2d& p);

/// All geometrically distinct shortest paths from p to q (more than one only
/// on ties within the geometric tolerance).
std::vector<GeodesicPath> shortest_candidates(const std::vector<Disk>& disks, const Eigen::Vector2d& p,
                                              const Eigen::Vector2d& q);

double distance(const std::vector<Disk>& disks, const Eigen::Vector2d& p, const Eigen::Vector2d& q);

/// Signed offset of a path to the left of its directed chord, integrated over
/// arclength. Upper tie-breaks maximize it.
double left_offset(const GeodesicPath& path);

Eigen::Vector2d arc_point(const ArcPiece& arc, double s);

}  // namespace catpursuit::plane_disks
