#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "multiloc/core/types.hpp"

namespace multiloc::eval {

struct PairedSample {
  Eigen::Vector3d est = Eigen::Vector3d::Zero();
  Eigen::Vector3d gt = Eigen::Vector3d::Zero();
  double t = 0.0;
};

struct Association {
  std::vector<PairedSample> pairs;
  int dropped = 0;
};

// Pairs each estimate with the ground truth linearly interpolated at the
// estimate's timestamp. Estimates outside the ground-truth span by more
// than max_dt are dropped and counted; within the margin they pair with
// the nearest endpoint.
Association associate(const Trajectory& est, const Trajectory& gt, double max_dt);

enum class AlignMode { None, Rigid, RigidScale };

struct AlignedPairSet {
  std::vector<PairedSample> pairs;  // est already transformed
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  double scale = 1.0;
};

// Closed-form least-squares alignment (orthogonal Procrustes / Umeyama)
// minimizing sum ||s R est + t - gt||^2. Mode None applies the identity,
// for estimators that already work in the absolute frame. Throws
// GeometryError naming the condition on degenerate (collinear) geometry.
AlignedPairSet align_rigid(std::span<const PairedSample> pairs, AlignMode mode);

enum class Projection { TwoD, ThreeD };

struct ErrorStats {
  double mean_m = 0.0;
  double sd_m = 0.0;      // sample standard deviation, n-1 denominator
  double median_m = 0.0;  // midpoint convention for even counts
  int count = 0;
  Projection projection = Projection::TwoD;
};

// Euclidean distances per pair; in 2D mode z is dropped before the
// distance is taken.
ErrorStats compute_error_stats(const AlignedPairSet& aligned, Projection projection);

}  // namespace multiloc::eval
