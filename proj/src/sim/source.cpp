#include "multiloc/sim/source.hpp"

#include <cmath>
#include <numbers>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/fft.hpp"
#include "multiloc/core/rng.hpp"

namespace multiloc::sim {

namespace {

constexpr double kChirpLoHz = 400.0;
constexpr double kChirpHiHz = 1400.0;
constexpr double kBurstSeconds = 0.2;
constexpr double kBurstPeriodSeconds = 0.5;  // two bursts per second

}  // namespace

SourceSignal gen_chirp(double duration_s, double sample_rate) {
  if (duration_s < 0.0) throw ConfigError("chirp duration must be non-negative");
  if (sample_rate < 4000.0) {
    throw ConfigError("chirp needs a sample rate of at least 4 kHz");
  }

  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  const auto period_n = static_cast<std::size_t>(std::llround(kBurstPeriodSeconds * sample_rate));
  const auto burst_n = static_cast<std::size_t>(std::llround(kBurstSeconds * sample_rate));
  // Sweep rate such that the instantaneous frequency reaches 1400 Hz at 200 ms.
  const double sweep = (kChirpHiHz - kChirpLoHz) / (2.0 * kBurstSeconds);

  SourceSignal out;
  out.sample_rate = sample_rate;
  out.kind = SignalKind::Chirp;
  out.samples.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = i % period_n;
    if (m < burst_n) {
      // Half-sample phase offset; keeps every gated sample nonzero.
      const double tl = (static_cast<double>(m) + 0.5) / sample_rate;
      const double phase = 2.0 * std::numbers::pi * (kChirpLoHz * tl + sweep * tl * tl);
      out.samples[i] = std::sin(phase);
    }
  }
  return out;
}

SourceSignal gen_wideband(double duration_s, double sample_rate, double band_lo_hz,
                          double band_hi_hz, std::uint64_t seed) {
  if (duration_s < 0.0) throw ConfigError("duration must be non-negative");
  if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be positive");
  if (!(0.0 < band_lo_hz && band_lo_hz < band_hi_hz && band_hi_hz < sample_rate / 2.0)) {
    throw ConfigError("wideband band must satisfy 0 < lo < hi < sample_rate/2");
  }

  SourceSignal out;
  out.sample_rate = sample_rate;
  out.kind = SignalKind::Wideband;
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  if (n == 0) return out;

  Rng rng(derive_seed(seed, "wideband"));
  std::vector<std::complex<double>> white(n);
  for (auto& v : white) v = {rng.gaussian(), 0.0};

  auto spectrum = fft::forward(white);
  const double df = sample_rate / static_cast<double>(n);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < n; ++k) {
    // Two-sided band mask; bin k and n-k carry +/- the same frequency.
    const double f = df * static_cast<double>(std::min(k, n - k));
    if (f < band_lo_hz || f > band_hi_hz) {
      spectrum[k] = {0.0, 0.0};
    } else {
      ++kept;
    }
  }
  if (kept == 0) throw ConfigError("band selects no spectral bins at this duration");

  auto shaped = fft::inverse(spectrum);
  out.samples.resize(n);
  double power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = shaped[i].real();
    power += out.samples[i] * out.samples[i];
  }
  const double rms = std::sqrt(power / static_cast<double>(n));
  if (!(rms > 0.0)) throw ConfigError("degenerate wideband signal with zero power");
  for (auto& v : out.samples) v /= rms;
  return out;
}

}  // namespace multiloc::sim
