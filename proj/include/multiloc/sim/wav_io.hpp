#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace multiloc::sim {

// Writes mono PCM 16-bit WAV. Samples are multiplied by scale and clipped
// to full scale.
void write_wav16(const std::filesystem::path& path, std::span<const double> samples,
                 int sample_rate, double scale = 1.0);

struct WavData {
  std::vector<double> samples;  // full scale mapped to [-1, 1]
  int sample_rate = 0;
};

WavData read_wav16(const std::filesystem::path& path);

}  // namespace multiloc::sim
