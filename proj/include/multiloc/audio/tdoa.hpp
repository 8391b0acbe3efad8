#pragma once

#include <vector>

#include "multiloc/audio/gcc_phat.hpp"
#include "multiloc/core/types.hpp"
#include "multiloc/sim/recording.hpp"

namespace multiloc::audio {

struct TdoaMeasurement {
  int mic_i = 0;        // reference side of the pair
  int mic_j = 0;        // delayed side; delay is j relative to i
  double delay_s = 0.0;
  double score = 0.0;
};

// Per-frame set of pairwise delay measurements. Frames during silence may
// carry no measurements.
struct TdoaFrame {
  double t = 0.0;  // frame center time
  std::vector<TdoaMeasurement> measurements;
};

// Extracts one TdoaFrame per hop. Pairs are (mic 0, j) for every other
// channel plus all remaining pairs for consistency scoring. Measurements
// are dropped when the peak score is below cfg.score_threshold or the
// delay violates the physical bound |tau| <= baseline / kMinSpeedOfSound.
std::vector<TdoaFrame> extract_tdoa_frames(const sim::MultichannelRecording& rec,
                                           const MicArray& mics, const GccConfig& cfg);

}  // namespace multiloc::audio
