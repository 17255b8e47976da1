#pragma once

namespace catpursuit::tol {

/// Point validity slack (disk interiors, sphere radius, tree offsets).
inline constexpr double point = 1e-12;
/// Geometric identities: lengths, tangency, separation monotonicity.
inline constexpr double geometric = 1e-9;
/// Angle inequalities; angles near degenerate triangles amplify distance error.
inline constexpr double angle = 1e-6;
/// Agreement with discretized oracles.
inline constexpr double oracle = 1e-3;

}  // namespace catpursuit::tol
