#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/pursuit.hpp"

#include <filesystem>

namespace catpursuit {

/// Planar domains only (Error(Unsupported) otherwise). Draws the region
/// boundary or removed disks and both trajectories with step markers.
void emit_plot(const DomainSpec& spec, const PursuitTrace& trace, const std::filesystem::path& path);

}  // namespace catpursuit
