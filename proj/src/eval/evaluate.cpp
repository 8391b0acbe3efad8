#include "multiloc/eval/evaluate.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "multiloc/core/errors.hpp"

namespace multiloc::eval {

Association associate(const Trajectory& est, const Trajectory& gt, double max_dt) {
  if (max_dt < 0.0) throw ConfigError("max_dt must be non-negative");
  Association out;
  for (const auto& s : est.samples()) {
    if (s.t < gt.start_time() - max_dt || s.t > gt.end_time() + max_dt) {
      ++out.dropped;
      continue;
    }
    out.pairs.push_back({s.position(), gt.position_at(s.t), s.t});
  }
  if (out.pairs.empty()) {
    throw InputError("association produced no pairs; trajectories do not overlap");
  }
  return out;
}

AlignedPairSet align_rigid(std::span<const PairedSample> pairs, AlignMode mode) {
  if (pairs.empty()) throw InputError("alignment needs at least one pair");

  AlignedPairSet out;
  if (mode == AlignMode::None) {
    out.pairs.assign(pairs.begin(), pairs.end());
    return out;
  }

  if (pairs.size() < 3) {
    throw GeometryError("rigid alignment needs at least 3 pairs for a unique rotation");
  }

  const auto n = static_cast<double>(pairs.size());
  Eigen::Vector3d est_mean = Eigen::Vector3d::Zero();
  Eigen::Vector3d gt_mean = Eigen::Vector3d::Zero();
  for (const auto& p : pairs) {
    est_mean += p.est;
    gt_mean += p.gt;
  }
  est_mean /= n;
  gt_mean /= n;

  Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
  double est_var = 0.0;
  for (const auto& p : pairs) {
    cross += (p.gt - gt_mean) * (p.est - est_mean).transpose();
    est_var += (p.est - est_mean).squaredNorm();
  }
  cross /= n;
  est_var /= n;

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  // A unique rotation needs the point sets to span at least a plane.
  if (sv(1) <= 1e-12 * std::max(sv(0), 1e-300)) {
    throw GeometryError(
        "degenerate alignment geometry: paired points are collinear, "
        "rotation is not uniquely determined");
  }

  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) {
    d(2, 2) = -1.0;  // keep det(R) = +1
  }
  out.rotation = svd.matrixU() * d * svd.matrixV().transpose();

  if (mode == AlignMode::RigidScale) {
    if (!(est_var > 0.0)) {
      throw GeometryError("degenerate alignment geometry: estimates are a single point");
    }
    out.scale = (sv.asDiagonal() * d).trace() / est_var;
  }
  out.translation = gt_mean - out.scale * out.rotation * est_mean;

  out.pairs.reserve(pairs.size());
  for (const auto& p : pairs) {
    PairedSample q = p;
    q.est = out.scale * out.rotation * p.est + out.translation;
    out.pairs.push_back(q);
  }
  return out;
}

ErrorStats compute_error_stats(const AlignedPairSet& aligned, Projection projection) {
  if (aligned.pairs.empty()) throw InputError("error statistics need at least one pair");

  std::vector<double> errors;
  errors.reserve(aligned.pairs.size());
  for (const auto& p : aligned.pairs) {
    Eigen::Vector3d diff = p.est - p.gt;
    if (projection == Projection::TwoD) diff.z() = 0.0;
    errors.push_back(diff.norm());
  }

  ErrorStats stats;
  stats.projection = projection;
  stats.count = static_cast<int>(errors.size());

  double sum = 0.0;
  for (double e : errors) sum += e;
  stats.mean_m = sum / static_cast<double>(errors.size());

  if (errors.size() > 1) {
    double ss = 0.0;
    for (double e : errors) ss += (e - stats.mean_m) * (e - stats.mean_m);
    stats.sd_m = std::sqrt(ss / static_cast<double>(errors.size() - 1));
  }

  std::sort(errors.begin(), errors.end());
  const std::size_t mid = errors.size() / 2;
  stats.median_m = errors.size() % 2 == 1
                       ? errors[mid]
                       : 0.5 * (errors[mid - 1] + errors[mid]);
  return stats;
}

}  // namespace multiloc::eval
