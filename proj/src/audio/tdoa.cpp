#include "multiloc/audio/tdoa.hpp"

#include <cmath>

#include "multiloc/audio/sound_speed.hpp"
#include "multiloc/core/errors.hpp"
#include "multiloc/core/parallel.hpp"

namespace multiloc::audio {

std::vector<TdoaFrame> extract_tdoa_frames(const sim::MultichannelRecording& rec,
                                           const MicArray& mics, const GccConfig& cfg) {
  cfg.validate();
  rec.validate();
  if (rec.channel_count() < 2) throw ShapeError("need at least 2 channels for TDOA");
  if (rec.channel_count() != mics.count()) {
    throw ShapeError("channel count does not match microphone count");
  }
  if (!(rec.sample_rate > 0.0)) throw ConfigError("recording sample rate must be positive");

  const std::size_t len = rec.length();
  const auto window = static_cast<std::size_t>(cfg.window);
  if (len < window) return {};
  const std::size_t frame_count = (len - window) / cfg.hop + 1;
  const int channels = static_cast<int>(rec.channel_count());

  // Pairwise physical bounds, seconds, at the slowest plausible sound speed.
  std::vector<std::vector<double>> bound(channels, std::vector<double>(channels, 0.0));
  for (int i = 0; i < channels; ++i) {
    for (int j = 0; j < channels; ++j) {
      bound[i][j] = (mics.at(i) - mics.at(j)).norm() / kMinSpeedOfSound;
    }
  }

  std::vector<TdoaFrame> frames(frame_count);

  parallel_for(frame_count, [&](std::size_t f) {
    const std::size_t start = f * cfg.hop;
    TdoaFrame& frame = frames[f];
    frame.t = rec.start_time +
              (static_cast<double>(start) + cfg.window / 2.0) / rec.sample_rate;

    // One FFT per channel, reused across all pairs of this frame.
    std::vector<std::vector<std::complex<double>>> spectra(channels);
    std::vector<bool> active(channels, false);
    for (int ch = 0; ch < channels; ++ch) {
      std::span<const double> w(rec.channels[ch].data() + start, window);
      for (double v : w) {
        if (v != 0.0) {
          active[ch] = true;
          break;
        }
      }
      if (active[ch]) spectra[ch] = gcc_window_spectrum(w, cfg);
    }

    for (int i = 0; i < channels; ++i) {
      for (int j = i + 1; j < channels; ++j) {
        if (!active[i] || !active[j]) continue;
        auto res = gcc_phat_spectra(spectra[i], spectra[j], rec.sample_rate, cfg);
        if (!res) continue;
        if (res->score < cfg.score_threshold) continue;
        if (std::abs(res->delay_s) > bound[i][j]) continue;
        frame.measurements.push_back({i, j, res->delay_s, res->score});
      }
    }
  });
  return frames;
}

}  // namespace multiloc::audio
