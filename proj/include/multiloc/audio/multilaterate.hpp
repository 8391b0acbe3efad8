#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <span>

#include "multiloc/audio/tdoa.hpp"
#include "multiloc/core/types.hpp"

namespace multiloc::audio {

struct RansacConfig {
  int iterations = 500;
  double inlier_threshold_s = 3.0 / 96000.0;  // TDOA residual gate
  int min_inliers = 4;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

struct SolveOptions {
  // When set, the source height is fixed and only x, y are solved.
  std::optional<double> planar_z;
};

struct FrameSolution {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  int inlier_count = 0;
  double residual_rms_s = 0.0;  // RMS TDOA residual over the inlier set
};

// Sum of squared range-difference residuals (meters^2) of the reference
// measurements (mic_i == 0) at position p. This is the cost the nonlinear
// refinement minimizes; exposed so tests can check local optimality.
double tdoa_cost(const Eigen::Vector3d& p, const MicArray& mics,
                 std::span<const TdoaMeasurement> measurements, double c);

// RANSAC over minimal reference-pair subsets, each hypothesis from a
// linearized range-difference solver with the reference range as an
// auxiliary unknown, scored by TDOA residual consensus over all
// measurements. The best consensus set is refined by damped Gauss-Newton;
// the prior seeds the refinement and breaks consensus ties. Returns
// nothing when the frame cannot be localized.
std::optional<FrameSolution> multilaterate_frame(
    const TdoaFrame& frame, const MicArray& mics, double c, const RansacConfig& cfg,
    std::optional<Eigen::Vector3d> prior = {}, const SolveOptions& opts = {});

}  // namespace multiloc::audio
