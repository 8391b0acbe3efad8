#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multiloc/audio/gcc_phat.hpp"
#include "multiloc/audio/multilaterate.hpp"
#include "multiloc/audio/smoother.hpp"
#include "multiloc/core/types.hpp"
#include "multiloc/sim/recording.hpp"

namespace multiloc::audio {

struct AudioPipelineConfig {
  GccConfig gcc;
  RansacConfig ransac;
  SmootherConfig smoother;
  std::optional<double> planar_z;  // fix the source height when known
};

enum class FrameStatus { Localized, NoMeasurements, Insufficient, NoConsensus };

std::string to_string(FrameStatus status);

struct FrameRecord {
  double t = 0.0;
  FrameStatus status = FrameStatus::NoMeasurements;
  int inliers = 0;
  double residual_s = 0.0;
};

struct AudioRunReport {
  double speed_of_sound = 0.0;
  std::uint64_t seed = 0;
  int total_frames = 0;
  int localized_frames = 0;
  std::vector<FrameRecord> frames;
};

struct AudioResult {
  Trajectory trajectory;
  AudioRunReport report;
};

// Full known-microphone localization chain: per-frame GCC-PHAT TDOA
// extraction, robust multilateration with the running estimate as prior,
// then batch smoothing onto the frame grid.
AudioResult localize_audio(const sim::MultichannelRecording& rec, const MicArray& mics,
                           double temperature_c, const AudioPipelineConfig& cfg);

}  // namespace multiloc::audio
