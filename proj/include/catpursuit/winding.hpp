#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/geodesic.hpp"

#include <span>

namespace catpursuit {

/// Local geodesic in a two-disk PlaneMinusDisks domain that makes
/// counterclockwise tangential contact with circle w[k] for each maximal run
/// of equal letters, adding k-1 full counterclockwise circuits for a run of
/// length k. Consecutive contacts are joined along the outer bitangent that
/// keeps both circles on the left. The path starts `lead` before the first
/// contact and ends `lead` after the last.
GeodesicPath build_winding_geodesic(const DomainSpec& spec, std::span<const int> word, double lead = 1.0);

}  // namespace catpursuit
