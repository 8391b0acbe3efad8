#include "multiloc/audio/gcc_phat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/fft.hpp"

namespace multiloc::audio {

void GccConfig::validate() const {
  if (window < 2) throw ConfigError("gcc window must be at least 2 samples");
  if (hop < 1 || hop > window) throw ConfigError("gcc hop must satisfy 0 < hop <= window");
  if (max_lag < 1 || max_lag >= window / 2) {
    throw ConfigError("gcc max_lag must satisfy 0 < max_lag < window/2");
  }
  if (score_threshold < 0.0 || score_threshold > 1.0) {
    throw ConfigError("gcc score threshold must lie in [0, 1]");
  }
}

std::size_t gcc_fft_size(const GccConfig& cfg) {
  return static_cast<std::size_t>(2 * cfg.window);
}

std::vector<std::complex<double>> gcc_window_spectrum(std::span<const double> w,
                                                      const GccConfig& cfg) {
  // Hann taper before the transform; band-limited sources otherwise leak
  // window-edge energy across the whole spectrum, and the phase transform
  // would amplify those bins into a spurious zero-lag peak.
  const std::size_t n = w.size();
  std::vector<double> tapered(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hann =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                              static_cast<double>(n - 1)));
    tapered[i] = w[i] * hann;
  }
  return fft::forward_real(tapered, gcc_fft_size(cfg));
}

std::optional<GccResult> gcc_phat_spectra(std::span<const std::complex<double>> x_spec,
                                          std::span<const std::complex<double>> y_spec,
                                          double sample_rate, const GccConfig& cfg) {
  const std::size_t nfft = gcc_fft_size(cfg);
  if (x_spec.size() != nfft || y_spec.size() != nfft) {
    throw ShapeError("spectrum length does not match the gcc fft size");
  }

  std::vector<std::complex<double>> cross(nfft);
  double max_mag = 0.0;
  for (std::size_t k = 0; k < nfft; ++k) {
    cross[k] = std::conj(x_spec[k]) * y_spec[k];
    max_mag = std::max(max_mag, std::abs(cross[k]));
  }
  if (!(max_mag > 0.0)) return std::nullopt;

  // Phase transform with a magnitude floor: bins well below the spectral
  // peak keep |G|/floor < 1 weight instead of full unit magnitude, so
  // leakage- or silence-dominated bins cannot outvote the signal band.
  const double floor = kPhatFloorRelative * max_mag;
  double mass = 0.0;
  for (auto& v : cross) {
    v /= std::max(std::abs(v), floor);
    mass += std::abs(v);
  }
  if (!(mass > 0.0)) return std::nullopt;

  const auto corr = fft::inverse(cross);
  // Peak of 1.0 means every weighted bin agrees on the lag.
  const double scale = static_cast<double>(nfft) / mass;
  auto value_at = [&](int lag) {
    const std::size_t idx = lag >= 0 ? static_cast<std::size_t>(lag)
                                     : nfft - static_cast<std::size_t>(-lag);
    return corr[idx].real() * scale;
  };

  int best_lag = -cfg.max_lag;
  double best = value_at(best_lag);
  for (int lag = -cfg.max_lag + 1; lag <= cfg.max_lag; ++lag) {
    const double v = value_at(lag);
    if (v > best) {
      best = v;
      best_lag = lag;
    }
  }

  double refined = static_cast<double>(best_lag);
  if (cfg.peak_interp == PeakInterp::Parabolic && std::abs(best_lag) < cfg.max_lag) {
    const double ym = value_at(best_lag - 1);
    const double y0 = best;
    const double yp = value_at(best_lag + 1);
    const double denom = ym - 2.0 * y0 + yp;
    if (std::abs(denom) > 1e-30) {
      refined += std::clamp(0.5 * (ym - yp) / denom, -1.0, 1.0);
    }
  }

  GccResult result;
  result.delay_s = refined / sample_rate;
  result.score = std::clamp(best, 0.0, 1.0);
  return result;
}

std::optional<GccResult> gcc_phat(std::span<const double> x, std::span<const double> y,
                                  double sample_rate, const GccConfig& cfg) {
  cfg.validate();
  if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be positive");
  if (x.size() != y.size()) throw ShapeError("gcc windows must have equal length");
  if (static_cast<int>(x.size()) < 2 * cfg.max_lag) {
    throw ShapeError("gcc window shorter than twice the max lag");
  }
  if (x.size() > gcc_fft_size(cfg)) {
    throw ShapeError("gcc window longer than the configured fft size");
  }

  auto has_signal = [](std::span<const double> s) {
    for (double v : s) {
      if (v != 0.0) return true;
    }
    return false;
  };
  if (!has_signal(x) || !has_signal(y)) return std::nullopt;

  const auto x_spec = gcc_window_spectrum(x, cfg);
  const auto y_spec = gcc_window_spectrum(y, cfg);
  return gcc_phat_spectra(x_spec, y_spec, sample_rate, cfg);
}

}  // namespace multiloc::audio
