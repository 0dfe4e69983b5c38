#pragma once

#include <string>

#include "nirp/integrate.hpp"

namespace nirp {

/// Renders a four-panel chart of a trajectory as a standalone SVG:
/// wage share & employment; private & government debt ratios; policy &
/// target rates (with a zero line); real output on a log scale & inflation.
/// Output is byte-deterministic for identical inputs. Throws
/// std::invalid_argument on an empty trajectory.
std::string render_svg(const Trajectory& traj, const std::string& title);

void write_svg(const Trajectory& traj, const std::string& title,
               const std::string& path);

}  // namespace nirp
