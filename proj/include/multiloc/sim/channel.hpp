#pragma once

#include <complex>
#include <vector>

#include "multiloc/core/types.hpp"

namespace multiloc::sim {

// One propagation path: straight segments source -> reflection points ->
// antenna; an empty point sequence is the line-of-sight path.
struct PropagationPath {
  std::vector<Eigen::Vector3d> reflection_points;
  std::complex<double> gain{1.0, 0.0};
};

struct PathSet {
  std::vector<PropagationPath> paths;
};

// Which propagation environment the reflections are computed for. Rotated
// mirrors the scatterer geometry through the room center and flips the
// reflection phase, standing in for a changed multipath environment.
enum class MultipathRegime { Baseline, Rotated };

// Uniform linear array along the y = 0 wall, half-wavelength element
// spacing at the center frequency, centered on the wall.
std::vector<Eigen::Vector3d> antenna_positions(const SceneConfig& scene);

// Tones spanning center_frequency +/- bandwidth/2, endpoints included.
std::vector<double> subcarrier_frequencies(const SceneConfig& scene);

// Line of sight plus one first-order specular reflection per side wall.
// Reflection points are solved for the array center and treated as fixed
// scatterers, path gains follow a 1/length law times reflection_gain per
// bounce.
PathSet make_room_paths(const Eigen::Vector3d& source, const SceneConfig& scene,
                        MultipathRegime regime = MultipathRegime::Baseline,
                        double reflection_gain = 0.6);

// H[a, k] = sum over paths of gain_p * exp(-j 2 pi f_k tau_{p,a}), where
// tau is the total geometric delay source -> reflections -> antenna a.
ChannelSnapshot synth_channel(const TimedPosition& position, const SceneConfig& scene,
                              const PathSet& paths);

// Snapshots along a trajectory at snapshot_rate, each with the room path
// set rebuilt for its source position. Throws GeometryError when the
// trajectory leaves the scene area.
std::vector<ChannelSnapshot> synth_channel_track(const Trajectory& traj,
                                                 const SceneConfig& scene,
                                                 double snapshot_rate,
                                                 MultipathRegime regime = MultipathRegime::Baseline,
                                                 double reflection_gain = 0.6);

}  // namespace multiloc::sim
