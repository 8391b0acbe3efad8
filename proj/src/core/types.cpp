#include "multiloc/core/types.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "multiloc/core/errors.hpp"

namespace multiloc {

Trajectory::Trajectory(std::vector<TimedPosition> samples,
                       std::optional<double> frame_rate_hint)
    : samples_(std::move(samples)), frame_rate_hint_(frame_rate_hint) {
  if (samples_.empty()) throw InputError("trajectory must have at least one sample");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y) ||
        !std::isfinite(s.z)) {
      throw InputError("trajectory sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(samples_[i - 1].t < s.t)) {
      throw InputError("trajectory timestamps must be strictly increasing");
    }
  }
  if (frame_rate_hint_ && *frame_rate_hint_ <= 0.0) {
    throw InputError("frame rate hint must be positive");
  }
}

Eigen::Vector3d Trajectory::position_at(double t) const {
  if (t <= samples_.front().t) return samples_.front().position();
  if (t >= samples_.back().t) return samples_.back().position();
  // First sample with time > t; its predecessor starts the bracket.
  auto upper = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double value, const TimedPosition& s) { return value < s.t; });
  const TimedPosition& b = *upper;
  const TimedPosition& a = *(upper - 1);
  if (t == a.t) return a.position();
  const double alpha = (t - a.t) / (b.t - a.t);
  return a.position() + alpha * (b.position() - a.position());
}

MicArray::MicArray(std::vector<Eigen::Vector3d> positions)
    : positions_(std::move(positions)) {
  if (positions_.size() < 4) {
    throw GeometryError("microphone array needs at least 4 microphones");
  }
  for (const auto& p : positions_) {
    if (!p.allFinite()) throw GeometryError("microphone position is not finite");
  }
  constexpr double kMinSeparation = 1e-6;  // m
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (std::size_t j = i + 1; j < positions_.size(); ++j) {
      if ((positions_[i] - positions_[j]).norm() < kMinSeparation) {
        throw GeometryError("microphones " + std::to_string(i) + " and " +
                            std::to_string(j) + " are coincident");
      }
    }
  }
  // Collinearity: the demeaned positions must span at least two directions.
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : positions_) centroid += p;
  centroid /= static_cast<double>(positions_.size());
  Eigen::MatrixXd demeaned(3, static_cast<Eigen::Index>(positions_.size()));
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    demeaned.col(static_cast<Eigen::Index>(i)) = positions_[i] - centroid;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(demeaned);
  const auto& sv = svd.singularValues();
  if (sv(1) <= 1e-9 * std::max(sv(0), 1.0)) {
    throw GeometryError("microphone positions are collinear");
  }
}

void SceneConfig::validate() const {
  if (!(area_x > 0.0) || !(area_y > 0.0)) {
    throw ConfigError("scene area dimensions must be positive");
  }
  if (antenna_count < 1 || subcarrier_count < 1) {
    throw ConfigError("antenna and subcarrier counts must be at least 1");
  }
  if (!(center_frequency > 0.0) || !(bandwidth >= 0.0)) {
    throw ConfigError("center frequency must be positive and bandwidth non-negative");
  }
  if (bandwidth >= 2.0 * center_frequency) {
    throw ConfigError("bandwidth exceeds the band supported by the center frequency");
  }
  if (!(audio_sample_rate > 0.0)) {
    throw ConfigError("audio sample rate must be positive");
  }
}

}  // namespace multiloc
