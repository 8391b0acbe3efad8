#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>

#include "multiloc/core/types.hpp"

namespace multiloc::audio {

struct SmootherConfig {
  double rate = 100.0;        // frame grid, Hz
  double accel_noise = 2.0;   // process noise, m/s^2 (white acceleration std)
  double meas_noise = 0.02;   // measurement noise std, m

  void validate() const;
};

struct RawFrameEstimate {
  double t = 0.0;
  std::optional<Eigen::Vector3d> position;  // empty when the frame is unlocalized
  int inlier_count = 0;
};

// Constant-velocity Kalman forward pass plus Rauch-Tung-Striebel backward
// smoothing, per axis. Unlocalized frames are filled by the smoothed motion
// model; frames after the last measurement coast on the last smoothed
// velocity. Input frames must lie on a uniform grid at cfg.rate.
Trajectory smooth_trajectory(std::span<const RawFrameEstimate> raw,
                             const SmootherConfig& cfg);

}  // namespace multiloc::audio
