#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "multiloc/core/types.hpp"
#include "multiloc/sim/recording.hpp"
#include "multiloc/sim/source.hpp"

namespace multiloc::sim {

// Static secondary sound source (e.g. equipment fan noise at a fixed spot).
struct Interferer {
  Eigen::Vector3d position;
  SourceSignal signal;
  double gain = 1.0;
};

// First-order specular echoes off the four side walls of the rectangular
// area, attenuated by `gain` relative to the direct path.
struct EchoSpec {
  double area_x = 4.2;
  double area_y = 2.5;
  double gain = 0.6;
};

struct AudioSynthOptions {
  std::optional<Interferer> interferer;
  std::optional<EchoSpec> echoes;
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
};

// Renders what each microphone hears while the source moves along the
// trajectory: channel i at time t carries the source sample emitted at
// t - d_i(t)/c, scaled by 1/max(d_i(t), 0.1 m), with fractional-delay
// linear interpolation. The recording covers the source duration and
// starts at the trajectory start time.
MultichannelRecording synth_audio(const Trajectory& traj, const SourceSignal& source,
                                  const MicArray& mics, double speed_of_sound,
                                  const AudioSynthOptions& opts = {});

}  // namespace multiloc::sim
