#pragma once

#include <string>

#include "nirp/integrate.hpp"

namespace nirp {

/// Fixed column order of trajectory files.
inline constexpr const char* kTrajectoryHeader =
    "t,omega,lambda,ell,rho,r_g,b,p,Y,pi,inflation,g_K,termination";

/// Writes one row per sample with 17 significant digits, enough to
/// round-trip every double exactly. The termination kind is repeated in the
/// last column of every row.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

std::string trajectory_csv_string(const Trajectory& traj);

/// Parses a file written by write_trajectory_csv. The header must match
/// exactly. Derived columns are re-read, not recomputed, so round-trip
/// comparisons see the written values.
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace nirp
