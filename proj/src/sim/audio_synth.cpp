#include "multiloc/sim/audio_synth.hpp"

#include <cmath>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/parallel.hpp"
#include "multiloc/core/rng.hpp"
#include "multiloc/sim/noise.hpp"

namespace multiloc::sim {

namespace {

constexpr double kDistanceFloor = 0.1;  // m, keeps the 1/d law bounded

// Source sample at fractional index. The signal is treated as embedded in
// zeros, so both edges interpolate toward zero; integer shifts of the
// source then shift the output exactly.
double sample_at(const SourceSignal& sig, double index) {
  const auto size = static_cast<double>(sig.samples.size());
  if (index <= -1.0 || index >= size) return 0.0;
  if (index < 0.0) return (index + 1.0) * sig.samples.front();
  const auto i = static_cast<std::size_t>(index);
  const double frac = index - static_cast<double>(i);
  if (i + 1 == sig.samples.size()) return (1.0 - frac) * sig.samples.back();
  return sig.samples[i] + frac * (sig.samples[i + 1] - sig.samples[i]);
}

// Delayed, distance-attenuated contribution of one emitter position.
double propagate(const SourceSignal& sig, double t_rel, const Eigen::Vector3d& from,
                 const Eigen::Vector3d& mic, double c, double gain) {
  const double d = (from - mic).norm();
  const double emit_t = t_rel - d / c;
  return gain * sample_at(sig, emit_t * sig.sample_rate) / std::max(d, kDistanceFloor);
}

std::vector<Eigen::Vector3d> wall_images(const Eigen::Vector3d& p, const EchoSpec& e) {
  return {
      {-p.x(), p.y(), p.z()},
      {2.0 * e.area_x - p.x(), p.y(), p.z()},
      {p.x(), -p.y(), p.z()},
      {p.x(), 2.0 * e.area_y - p.y(), p.z()},
  };
}

}  // namespace

void MultichannelRecording::validate() const {
  for (const auto& ch : channels) {
    if (ch.size() != length()) {
      throw ShapeError("recording channels have unequal lengths");
    }
  }
}

MultichannelRecording synth_audio(const Trajectory& traj, const SourceSignal& source,
                                  const MicArray& mics, double speed_of_sound,
                                  const AudioSynthOptions& opts) {
  if (!(speed_of_sound > 0.0)) throw ConfigError("speed of sound must be positive");
  if (mics.empty()) throw GeometryError("microphone array is empty");
  if (source.samples.empty()) throw InputError("source signal is empty");
  if (traj.span() + 1e-9 < source.duration()) {
    throw InputError("trajectory timespan is shorter than the source duration");
  }
  if (opts.interferer && opts.interferer->signal.sample_rate != source.sample_rate) {
    throw ConfigError("interferer sample rate must match the source");
  }

  const double fs = source.sample_rate;
  const std::size_t n = source.samples.size();
  const double t0 = traj.start_time();

  // Source positions are shared across channels; precompute per sample.
  std::vector<Eigen::Vector3d> src_pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    src_pos[i] = traj.position_at(t0 + static_cast<double>(i) / fs);
  }

  MultichannelRecording rec;
  rec.sample_rate = fs;
  rec.start_time = t0;
  rec.channels.assign(mics.count(), std::vector<double>(n, 0.0));

  parallel_for(mics.count(), [&](std::size_t ch) {
    const Eigen::Vector3d mic = mics.at(ch);
    auto& out = rec.channels[ch];
    for (std::size_t i = 0; i < n; ++i) {
      const double t_rel = static_cast<double>(i) / fs;
      double v = propagate(source, t_rel, src_pos[i], mic, speed_of_sound, 1.0);
      if (opts.echoes) {
        for (const auto& img : wall_images(src_pos[i], *opts.echoes)) {
          v += propagate(source, t_rel, img, mic, speed_of_sound, opts.echoes->gain);
        }
      }
      if (opts.interferer) {
        const auto& intf = *opts.interferer;
        v += propagate(intf.signal, t_rel, intf.position, mic, speed_of_sound, intf.gain);
        if (opts.echoes) {
          for (const auto& img : wall_images(intf.position, *opts.echoes)) {
            v += propagate(intf.signal, t_rel, img, mic, speed_of_sound,
                           intf.gain * opts.echoes->gain);
          }
        }
      }
      out[i] = v;
    }
    if (opts.snr_db) {
      out = add_awgn(out, *opts.snr_db, derive_seed(opts.seed, "synth_audio.awgn", ch));
    }
  });
  return rec;
}

}  // namespace multiloc::sim
