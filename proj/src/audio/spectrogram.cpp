#include "multiloc/audio/spectrogram.hpp"

#include <cmath>
#include <numbers>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/fft.hpp"

namespace multiloc::audio {

Spectrogram spectrogram(std::span<const double> x, double sample_rate, int window,
                        int hop) {
  if (window < 2) throw ConfigError("spectrogram window must be at least 2");
  if (hop < 1) throw ConfigError("spectrogram hop must be at least 1");
  if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be positive");

  std::vector<double> hann(window);
  for (int i = 0; i < window; ++i) {
    hann[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (window - 1)));
  }

  const int bins = window / 2 + 1;
  const std::size_t frames =
      x.size() >= static_cast<std::size_t>(window)
          ? (x.size() - window) / hop + 1
          : 0;

  Spectrogram out;
  out.power = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(frames), bins);
  out.times.reserve(frames);
  out.freqs.reserve(bins);
  for (int b = 0; b < bins; ++b) out.freqs.push_back(b * sample_rate / window);

  std::vector<double> buf(window);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * hop;
    out.times.push_back((start + window / 2.0) / sample_rate);
    for (int i = 0; i < window; ++i) buf[i] = x[start + i] * hann[i];
    const auto spec = fft::forward_real(buf, static_cast<std::size_t>(window));
    for (int b = 0; b < bins; ++b) {
      out.power(static_cast<Eigen::Index>(f), b) = std::norm(spec[b]);
    }
  }
  return out;
}

}  // namespace multiloc::audio
