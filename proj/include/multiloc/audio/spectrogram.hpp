#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace multiloc::audio {

struct Spectrogram {
  Eigen::MatrixXd power;      // frames x bins, squared magnitude
  std::vector<double> times;  // frame center, seconds
  std::vector<double> freqs;  // bin center, Hz
};

// Hann-windowed short-time power spectrum, bins 0..window/2.
Spectrogram spectrogram(std::span<const double> x, double sample_rate, int window,
                        int hop);

}  // namespace multiloc::audio
