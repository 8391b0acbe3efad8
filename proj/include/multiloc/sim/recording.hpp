#pragma once

#include <vector>

namespace multiloc::sim {

// Synchronized microphone recordings: one signal per microphone, all the
// same length and sample rate, starting at start_time.
struct MultichannelRecording {
  std::vector<std::vector<double>> channels;
  double sample_rate = 0.0;
  double start_time = 0.0;

  std::size_t channel_count() const { return channels.size(); }
  std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }

  // Throws ShapeError when channels have unequal lengths.
  void validate() const;
};

}  // namespace multiloc::sim
