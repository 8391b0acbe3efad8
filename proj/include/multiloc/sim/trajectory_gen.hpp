#pragma once

#include <array>
#include <optional>
#include <vector>

#include "multiloc/core/types.hpp"

namespace multiloc::sim {

enum class PathPattern { Grid, Circle, Rectangle, Waypoints };

struct TrajectorySpec {
  PathPattern pattern = PathPattern::Grid;
  double speed = 0.5;  // m/s along the path
  double rate = 100.0; // samples/s
  double z = 1.0;      // planar motion height
  double start_time = 0.0;
  // When set, the path is walked (cycling closed paths, ping-ponging open
  // ones) until this many seconds are covered; otherwise one pass.
  std::optional<double> duration;

  // grid / rectangle
  double margin = 0.3;        // distance kept from the area walls
  double line_spacing = 0.25; // grid sweep line separation

  // circle
  double radius = 0.8;
  std::optional<std::array<double, 2>> center;  // defaults to the area center

  // manual waypoints (meters, in-area)
  std::vector<std::array<double, 2>> waypoints;
};

// Generates a constant-speed planar trajectory inside the scene area.
Trajectory gen_trajectory(const TrajectorySpec& spec, const SceneConfig& scene);

}  // namespace multiloc::sim
