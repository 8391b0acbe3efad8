#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace multiloc::audio {

enum class PeakInterp { None, Parabolic };

struct GccConfig {
  int window = 4096;  // samples per analysis frame
  int hop = 960;      // frame advance, 10 ms at 96 kHz (100 Hz estimation rate)
  PeakInterp peak_interp = PeakInterp::Parabolic;
  int max_lag = 2000;           // lag search range, must stay below window/2
  double score_threshold = 0.15;  // minimum peak height to retain a measurement

  void validate() const;  // throws ConfigError
};

struct GccResult {
  double delay_s = 0.0;  // positive when y lags x
  double score = 0.0;    // normalized PHAT peak in [0, 1]
};

// Relative magnitude floor of the phase transform: cross-spectrum bins
// below this fraction of the peak magnitude are attenuated instead of
// whitened to unit magnitude.
inline constexpr double kPhatFloorRelative = 1e-2;

// Generalized cross correlation with phase transform: Hann-tapered windows
// are transformed, the cross spectrum is magnitude-normalized (bins under
// the floor keep proportionally less weight), transformed back, and the
// peak searched over lags in [-max_lag, max_lag] with optional parabolic
// sub-sample refinement. The score is the peak height relative to the
// total spectral weight, 1.0 for perfectly coherent windows. Returns
// nothing when either window carries no signal.
std::optional<GccResult> gcc_phat(std::span<const double> x, std::span<const double> y,
                                  double sample_rate, const GccConfig& cfg);

// Same computation on precomputed window spectra; lets a caller reuse
// per-channel FFTs across microphone pairs.
std::optional<GccResult> gcc_phat_spectra(std::span<const std::complex<double>> x_spec,
                                          std::span<const std::complex<double>> y_spec,
                                          double sample_rate, const GccConfig& cfg);

// FFT length used for a config's windows (covers window + max lag).
std::size_t gcc_fft_size(const GccConfig& cfg);

// Hann-tapered, zero-padded spectrum of one analysis window, as consumed
// by gcc_phat_spectra.
std::vector<std::complex<double>> gcc_window_spectrum(std::span<const double> window,
                                                      const GccConfig& cfg);

}  // namespace multiloc::audio
