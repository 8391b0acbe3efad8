#pragma once

#include <cstdint>
#include <vector>

namespace multiloc::sim {

enum class SignalKind { Chirp, Wideband, SilenceMixed };

// Source waveform played by the moving speaker. Amplitudes are unitless;
// chirps are full-scale within [-1, 1], wideband noise is unit-RMS.
struct SourceSignal {
  std::vector<double> samples;
  double sample_rate = 0.0;
  SignalKind kind = SignalKind::Wideband;

  double duration() const {
    return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Two 200 ms linear up-chirps 400->1400 Hz per second, the remaining 60 %
// exact zeros (duty cycle 0.4).
SourceSignal gen_chirp(double duration_s, double sample_rate);

// Band-limited unit-RMS noise, deterministic given the seed. Stands in for
// wideband continuous program material.
SourceSignal gen_wideband(double duration_s, double sample_rate, double band_lo_hz,
                          double band_hi_hz, std::uint64_t seed);

}  // namespace multiloc::sim
