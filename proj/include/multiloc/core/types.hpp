#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace multiloc {

// One ground-truth or estimated sample: monotone clock time plus meters.
struct TimedPosition {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d position() const { return {x, y, z}; }
};

// Time-ordered 3D positions with strictly increasing timestamps.
class Trajectory {
 public:
  explicit Trajectory(std::vector<TimedPosition> samples,
                      std::optional<double> frame_rate_hint = {});

  const std::vector<TimedPosition>& samples() const { return samples_; }
  std::optional<double> frame_rate_hint() const { return frame_rate_hint_; }
  std::size_t size() const { return samples_.size(); }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }
  double span() const { return end_time() - start_time(); }

  // Piecewise-linear position at time t, clamped to the trajectory ends.
  Eigen::Vector3d position_at(double t) const;

 private:
  std::vector<TimedPosition> samples_;
  std::optional<double> frame_rate_hint_;
};

// Ordered microphone positions (meters). Construction enforces the geometry
// needed for multilateration: at least 4 microphones, none coincident, not
// all collinear. A default-constructed array is an empty placeholder.
class MicArray {
 public:
  MicArray() = default;
  explicit MicArray(std::vector<Eigen::Vector3d> positions);

  const std::vector<Eigen::Vector3d>& positions() const { return positions_; }
  std::size_t count() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  const Eigen::Vector3d& at(std::size_t i) const { return positions_.at(i); }

 private:
  std::vector<Eigen::Vector3d> positions_;
};

// Complex channel frequency response at one time instant,
// rows = antennas, cols = subcarriers.
struct ChannelSnapshot {
  Eigen::MatrixXcd H;
  double t = 0.0;

  int antennas() const { return static_cast<int>(H.rows()); }
  int subcarriers() const { return static_cast<int>(H.cols()); }
};

// Full description of a synthetic measurement campaign.
struct SceneConfig {
  double area_x = 4.2;   // m
  double area_y = 2.5;   // m
  MicArray mic_array;
  int antenna_count = 100;
  int subcarrier_count = 100;
  double center_frequency = 3.7e9;  // Hz
  double bandwidth = 20e6;          // Hz
  double audio_sample_rate = 96000.0;
  double temperature = 22.0;  // deg C
  std::uint64_t rng_seed = 1;

  // Throws ConfigError on an invalid field.
  void validate() const;
};

}  // namespace multiloc
