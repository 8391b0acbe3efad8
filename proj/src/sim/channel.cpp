#include "multiloc/sim/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/trajectory.hpp"

namespace multiloc::sim {

namespace {

constexpr double kLightSpeed = 299792458.0;  // m/s
constexpr double kArrayHeight = 1.0;         // m, antenna element height
constexpr double kDistanceFloor = 0.1;       // m, bounds the 1/length gain law

// Specular reflection point of the path source -> wall -> target, with the
// wall given as the plane axis = value (axis 0 for x, 1 for y).
Eigen::Vector3d specular_point(const Eigen::Vector3d& source,
                               const Eigen::Vector3d& target, int axis, double value) {
  Eigen::Vector3d image = source;
  image[axis] = 2.0 * value - source[axis];
  const double denom = target[axis] - image[axis];
  // Degenerate when both endpoints sit on the wall; park the point between.
  const double t = std::abs(denom) > 1e-12 ? (value - image[axis]) / denom : 0.5;
  return image + std::clamp(t, 0.0, 1.0) * (target - image);
}

double path_length(const Eigen::Vector3d& source,
                   const std::vector<Eigen::Vector3d>& points,
                   const Eigen::Vector3d& end) {
  double len = 0.0;
  Eigen::Vector3d prev = source;
  for (const auto& p : points) {
    len += (p - prev).norm();
    prev = p;
  }
  return len + (end - prev).norm();
}

}  // namespace

std::vector<Eigen::Vector3d> antenna_positions(const SceneConfig& scene) {
  scene.validate();
  const double wavelength = kLightSpeed / scene.center_frequency;
  const double spacing = wavelength / 2.0;
  const int n = scene.antenna_count;
  const double x0 = scene.area_x / 2.0 - spacing * (n - 1) / 2.0;
  std::vector<Eigen::Vector3d> out;
  out.reserve(n);
  for (int a = 0; a < n; ++a) {
    out.emplace_back(x0 + spacing * a, 0.0, kArrayHeight);
  }
  return out;
}

std::vector<double> subcarrier_frequencies(const SceneConfig& scene) {
  const int k = scene.subcarrier_count;
  std::vector<double> out;
  out.reserve(k);
  if (k == 1) {
    out.push_back(scene.center_frequency);
    return out;
  }
  const double f0 = scene.center_frequency - scene.bandwidth / 2.0;
  const double df = scene.bandwidth / (k - 1);
  for (int i = 0; i < k; ++i) out.push_back(f0 + df * i);
  return out;
}

PathSet make_room_paths(const Eigen::Vector3d& source, const SceneConfig& scene,
                        MultipathRegime regime, double reflection_gain) {
  scene.validate();
  const auto antennas = antenna_positions(scene);
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  for (const auto& a : antennas) center += a;
  center /= static_cast<double>(antennas.size());

  PathSet set;
  {
    PropagationPath los;
    los.gain = 1.0 / std::max((source - center).norm(), kDistanceFloor);
    set.paths.push_back(std::move(los));
  }

  const std::array<std::pair<int, double>, 4> walls{{
      {0, 0.0}, {0, scene.area_x}, {1, 0.0}, {1, scene.area_y}}};
  for (const auto& [axis, value] : walls) {
    Eigen::Vector3d point = specular_point(source, center, axis, value);
    std::complex<double> bounce{-reflection_gain, 0.0};
    if (regime == MultipathRegime::Rotated) {
      point.x() = scene.area_x - point.x();
      point.y() = scene.area_y - point.y();
      bounce = {reflection_gain, 0.0};
    }
    PropagationPath path;
    path.reflection_points = {point};
    const double len = path_length(source, path.reflection_points, center);
    path.gain = bounce / std::max(len, kDistanceFloor);
    set.paths.push_back(std::move(path));
  }
  return set;
}

ChannelSnapshot synth_channel(const TimedPosition& position, const SceneConfig& scene,
                              const PathSet& paths) {
  scene.validate();
  if (paths.paths.empty()) throw InputError("path set must contain at least one path");
  const Eigen::Vector3d source = position.position();
  if (!source.allFinite()) throw InputError("source position is not finite");

  const auto antennas = antenna_positions(scene);
  const auto freqs = subcarrier_frequencies(scene);
  const int num_a = static_cast<int>(antennas.size());
  const int num_k = static_cast<int>(freqs.size());
  const double df = num_k > 1 ? freqs[1] - freqs[0] : 0.0;

  ChannelSnapshot snap;
  snap.t = position.t;
  snap.H = Eigen::MatrixXcd::Zero(num_a, num_k);
  for (const auto& path : paths.paths) {
    if (!std::isfinite(path.gain.real()) || !std::isfinite(path.gain.imag())) {
      throw InputError("path gain is not finite");
    }
    // Prefix length up to the last reflection point is antenna-independent.
    double prefix = 0.0;
    Eigen::Vector3d last = source;
    for (const auto& p : path.reflection_points) {
      prefix += (p - last).norm();
      last = p;
    }
    for (int a = 0; a < num_a; ++a) {
      const double tau = (prefix + (antennas[a] - last).norm()) / kLightSpeed;
      // Linear tone grid: advance the phasor by a constant step per tone.
      const std::complex<double> step =
          std::polar(1.0, -2.0 * std::numbers::pi * df * tau);
      std::complex<double> phasor =
          std::polar(1.0, -2.0 * std::numbers::pi * freqs[0] * tau);
      for (int k = 0; k < num_k; ++k) {
        snap.H(a, k) += path.gain * phasor;
        phasor *= step;
      }
    }
  }
  return snap;
}

std::vector<ChannelSnapshot> synth_channel_track(const Trajectory& traj,
                                                 const SceneConfig& scene,
                                                 double snapshot_rate,
                                                 MultipathRegime regime,
                                                 double reflection_gain) {
  scene.validate();
  if (!(snapshot_rate > 0.0)) throw ConfigError("snapshot rate must be positive");
  for (const auto& s : traj.samples()) {
    if (s.x < -1e-9 || s.x > scene.area_x + 1e-9 || s.y < -1e-9 ||
        s.y > scene.area_y + 1e-9) {
      throw GeometryError("trajectory leaves the scene area");
    }
  }
  const Trajectory grid = traj.size() >= 2 && traj.span() > 1.0 / snapshot_rate
                              ? resample_trajectory(traj, snapshot_rate)
                              : traj;
  std::vector<ChannelSnapshot> snapshots;
  snapshots.reserve(grid.size());
  for (const auto& s : grid.samples()) {
    const auto paths = make_room_paths(s.position(), scene, regime, reflection_gain);
    snapshots.push_back(synth_channel(s, scene, paths));
  }
  return snapshots;
}

}  // namespace multiloc::sim
