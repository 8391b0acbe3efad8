#pragma once

#include <filesystem>

#include "multiloc/core/types.hpp"

namespace multiloc {

// Resamples onto a uniform grid spanning the input time range, positions
// linearly interpolated between bracketing samples. The grid is clipped to
// the input span; no extrapolation.
Trajectory resample_trajectory(const Trajectory& traj, double rate_hz);

// Trajectory file format: CSV with header "t,x,y,z", SI units, one row per
// sample, '.' decimal separator.
Trajectory load_trajectory_csv(const std::filesystem::path& path);
void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

}  // namespace multiloc
