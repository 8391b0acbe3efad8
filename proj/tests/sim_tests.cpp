#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/fft.hpp"
#include "multiloc/core/rng.hpp"
#include "multiloc/sim/audio_synth.hpp"
#include "multiloc/sim/channel.hpp"
#include "multiloc/sim/csnp_io.hpp"
#include "multiloc/sim/noise.hpp"
#include "multiloc/sim/source.hpp"
#include "multiloc/sim/trajectory_gen.hpp"
#include "multiloc/sim/wav_io.hpp"

using namespace multiloc;
using namespace multiloc::sim;

namespace {

// Brute-force time-domain cross-correlation: the integer lag that maximizes
// sum x[n] y[n + lag], i.e. the delay of y relative to x.
int xcorr_argmax(std::span<const double> x, std::span<const double> y, int max_lag) {
  int best_lag = 0;
  double best = -1e300;
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      const auto m = static_cast<long long>(n) + lag;
      if (m < 0 || m >= static_cast<long long>(y.size())) continue;
      acc += x[n] * y[static_cast<std::size_t>(m)];
    }
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  return best_lag;
}

double zero_crossing_freq(std::span<const double> x, double fs) {
  int crossings = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if ((x[i - 1] < 0.0 && x[i] >= 0.0) || (x[i - 1] >= 0.0 && x[i] < 0.0)) ++crossings;
  }
  return crossings * fs / (2.0 * static_cast<double>(x.size()));
}

SceneConfig radio_scene(int antennas, int subcarriers) {
  SceneConfig scene;
  scene.antenna_count = antennas;
  scene.subcarrier_count = subcarriers;
  return scene;
}

MicArray square_mics() {
  return MicArray({Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(4, 0, 1.5),
                   Eigen::Vector3d(4, 2.5, 1), Eigen::Vector3d(0, 2.5, 1.5)});
}

Trajectory static_traj(const Eigen::Vector3d& p, double duration) {
  return Trajectory({{0.0, p.x(), p.y(), p.z()}, {duration, p.x(), p.y(), p.z()}});
}

}  // namespace

TEST_CASE("chirp duty cycle is 0.4") {
  const auto sig = gen_chirp(1.0, 96000.0);
  REQUIRE(sig.samples.size() == 96000);
  std::size_t nonzero = 0;
  for (double v : sig.samples) {
    if (v != 0.0) ++nonzero;
  }
  CHECK(std::llabs(static_cast<long long>(nonzero) - 38400ll) <= 1);
  for (double v : sig.samples) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("chirp sweeps 400 to 1400 Hz per burst") {
  const auto sig = gen_chirp(1.0, 96000.0);
  const int win = 960;  // 10 ms
  const double f_start = zero_crossing_freq({sig.samples.data(), static_cast<std::size_t>(win)}, 96000.0);
  const int burst_end = 19200;
  const double f_end = zero_crossing_freq(
      {sig.samples.data() + burst_end - win, static_cast<std::size_t>(win)}, 96000.0);
  CHECK(std::abs(f_start - 400.0) <= 50.0);
  CHECK(std::abs(f_end - 1400.0) <= 100.0);
}

TEST_CASE("chirp edge cases") {
  CHECK(gen_chirp(0.0, 96000.0).samples.empty());
  CHECK_THROWS_AS(gen_chirp(1.0, 2000.0), ConfigError);
}

TEST_CASE("wideband noise is deterministic, unit RMS, and band-limited") {
  const auto a = gen_wideband(0.5, 96000.0, 100.0, 8000.0, 99);
  const auto b = gen_wideband(0.5, 96000.0, 100.0, 8000.0, 99);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);

  double power = 0.0;
  for (double v : a.samples) power += v * v;
  const double rms = std::sqrt(power / a.samples.size());
  CHECK(rms == doctest::Approx(1.0).epsilon(1e-6));

  // Spectrum integration oracle: at least 95 % of power inside the band.
  const auto spec = fft::forward_real(a.samples, a.samples.size());
  const std::size_t n = spec.size();
  double in_band = 0.0, total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = 96000.0 * static_cast<double>(std::min(k, n - k)) / static_cast<double>(n);
    const double p = std::norm(spec[k]);
    total += p;
    if (f >= 100.0 && f <= 8000.0) in_band += p;
  }
  CHECK(in_band / total > 0.95);

  CHECK_THROWS_AS(gen_wideband(0.5, 96000.0, 8000.0, 100.0, 1), ConfigError);
  CHECK_THROWS_AS(gen_wideband(0.5, 96000.0, 100.0, 60000.0, 1), ConfigError);
}

TEST_CASE("grid trajectory stays inside the paper-scale area") {
  SceneConfig scene;
  TrajectorySpec spec;
  spec.pattern = PathPattern::Grid;
  spec.speed = 0.5;
  spec.rate = 100.0;
  const Trajectory traj = gen_trajectory(spec, scene);
  REQUIRE(traj.size() > 10);
  int good_steps = 0, steps = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.samples()[i];
    CHECK(s.x >= 0.0);
    CHECK(s.x <= 4.2);
    CHECK(s.y >= 0.0);
    CHECK(s.y <= 2.5);
    CHECK(s.z == doctest::Approx(spec.z));
    if (i > 0) {
      const double d = (traj.samples()[i].position() - traj.samples()[i - 1].position()).norm();
      ++steps;
      if (std::abs(d - 0.005) <= 0.005 * 0.01) ++good_steps;
    }
  }
  // Straight-line steps move exactly speed/rate; only corner-straddling
  // samples fall short.
  CHECK(static_cast<double>(good_steps) / steps > 0.98);
}

TEST_CASE("degenerate circle sits at the center") {
  SceneConfig scene;
  TrajectorySpec spec;
  spec.pattern = PathPattern::Circle;
  spec.radius = 0.0;
  spec.duration = 0.5;
  const Trajectory traj = gen_trajectory(spec, scene);
  for (const auto& s : traj.samples()) {
    CHECK(s.x == doctest::Approx(2.1));
    CHECK(s.y == doctest::Approx(1.25));
  }
}

TEST_CASE("unit circle keeps radius and covers speed*t of arc") {
  SceneConfig scene;
  TrajectorySpec spec;
  spec.pattern = PathPattern::Circle;
  spec.radius = 1.0;
  spec.speed = 0.5;
  spec.rate = 100.0;
  spec.duration = 3.0;
  const Trajectory traj = gen_trajectory(spec, scene);
  REQUIRE(traj.size() == 301);
  double chord_sum_first_second = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double r = std::hypot(traj.samples()[i].x - 2.1, traj.samples()[i].y - 1.25);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
    if (i >= 1 && i <= 100) {
      chord_sum_first_second +=
          (traj.samples()[i].position() - traj.samples()[i - 1].position()).norm();
    }
  }
  CHECK(chord_sum_first_second == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("patterns that leave the area raise geometry errors") {
  SceneConfig scene;
  TrajectorySpec circle;
  circle.pattern = PathPattern::Circle;
  circle.radius = 3.0;
  CHECK_THROWS_AS(gen_trajectory(circle, scene), GeometryError);

  TrajectorySpec grid;
  grid.pattern = PathPattern::Grid;
  grid.margin = 2.0;
  CHECK_THROWS_AS(gen_trajectory(grid, scene), GeometryError);

  TrajectorySpec way;
  way.pattern = PathPattern::Waypoints;
  way.waypoints = {{0.5, 0.5}, {5.5, 1.0}};
  CHECK_THROWS_AS(gen_trajectory(way, scene), GeometryError);
}

TEST_CASE("equidistant microphones hear the source at zero lag") {
  const auto source = gen_wideband(0.3, 96000.0, 100.0, 8000.0, 4);
  MicArray mics({Eigen::Vector3d(0, 1, 1), Eigen::Vector3d(2, 1, 1),
                 Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(1, 2, 0.5)});
  const auto rec = synth_audio(static_traj({1, 1, 1}, 0.4), source, mics, 344.0);
  REQUIRE(rec.channel_count() == 4);
  CHECK(xcorr_argmax(rec.channels[0], rec.channels[1], 400) == 0);
}

TEST_CASE("geometric inter-channel delay is recovered by brute-force correlation") {
  const auto source = gen_wideband(0.3, 96000.0, 100.0, 8000.0, 5);
  // Distances 1 m and 2 m from the source: expected delay 1/344 s.
  MicArray mics({Eigen::Vector3d(1, 1, 2), Eigen::Vector3d(1, 1, 3),
                 Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(2, 0.5, 1)});
  const auto rec = synth_audio(static_traj({1, 1, 1}, 0.4), source, mics, 344.0);
  const int lag = xcorr_argmax(rec.channels[0], rec.channels[1], 400);
  const double expected_samples = (2.0 - 1.0) / 344.0 * 96000.0;  // 279.07
  CHECK(std::abs(lag - expected_samples) <= 0.5);
}

TEST_CASE("noiseless channels are exact fractional-delay copies") {
  const double fs = 96000.0;
  const double c = 344.0;
  const int delay_samples = 300;
  const double d = c * delay_samples / fs;  // integer-sample distance
  const auto source = gen_wideband(0.2, fs, 100.0, 8000.0, 6);
  MicArray mics({Eigen::Vector3d(1 + d, 1, 1), Eigen::Vector3d(0, 0, 0),
                 Eigen::Vector3d(3, 0, 2), Eigen::Vector3d(0, 2, 1)});
  const auto rec = synth_audio(static_traj({1, 1, 1}, 0.3), source, mics, c);
  for (std::size_t n = delay_samples; n < rec.length(); ++n) {
    const double expect = source.samples[n - delay_samples] / d;
    CHECK(std::abs(rec.channels[0][n] - expect) < 1e-9);
  }
}

TEST_CASE("delaying the source delays every channel (time-shift equivariance)") {
  const double fs = 96000.0;
  const auto source = gen_wideband(0.2, fs, 100.0, 8000.0, 7);
  const int shift = 50;
  SourceSignal shifted;
  shifted.sample_rate = fs;
  shifted.kind = source.kind;
  shifted.samples.assign(source.samples.size(), 0.0);
  for (std::size_t n = shift; n < source.samples.size(); ++n) {
    shifted.samples[n] = source.samples[n - shift];
  }
  MicArray mics = square_mics();
  const auto rec = synth_audio(static_traj({2, 1, 1}, 0.3), source, mics, 344.0);
  const auto rec_shifted = synth_audio(static_traj({2, 1, 1}, 0.3), shifted, mics, 344.0);
  for (std::size_t ch = 0; ch < mics.count(); ++ch) {
    for (std::size_t n = shift; n < rec.length(); ++n) {
      CHECK(std::abs(rec_shifted.channels[ch][n] - rec.channels[ch][n - shift]) < 1e-9);
    }
  }
}

TEST_CASE("single line-of-sight path gives flat magnitude and linear phase") {
  SceneConfig scene = radio_scene(1, 16);
  PathSet los;
  los.paths.push_back({{}, {0.7, 0.0}});
  const auto snap = synth_channel({0.0, 2.0, 1.8, 1.0}, scene, los);
  REQUIRE(snap.antennas() == 1);
  REQUIRE(snap.subcarriers() == 16);

  const auto antenna = antenna_positions(scene)[0];
  const double tau = (Eigen::Vector3d(2.0, 1.8, 1.0) - antenna).norm() / 299792458.0;
  const double df = scene.bandwidth / 15.0;
  for (int k = 0; k < 16; ++k) {
    CHECK(std::abs(snap.H(0, k)) == doctest::Approx(0.7).epsilon(1e-12));
    if (k > 0) {
      const auto ratio = snap.H(0, k) * std::conj(snap.H(0, k - 1));
      const double slope = std::arg(ratio);
      CHECK(slope == doctest::Approx(-2.0 * std::numbers::pi * df * tau).epsilon(1e-9));
    }
  }
}

TEST_CASE("phase difference between two positions matches the geometry") {
  SceneConfig scene = radio_scene(8, 5);
  PathSet los;
  los.paths.push_back({{}, {1.0, 0.0}});
  const Eigen::Vector3d p1(1.5, 1.2, 1.0), p2(2.5, 1.2, 1.0);
  const auto s1 = synth_channel({0.0, p1.x(), p1.y(), p1.z()}, scene, los);
  const auto s2 = synth_channel({0.0, p2.x(), p2.y(), p2.z()}, scene, los);
  const auto antennas = antenna_positions(scene);
  const auto freqs = subcarrier_frequencies(scene);
  for (int a = 0; a < 8; ++a) {
    const double dd = (p2 - antennas[a]).norm() - (p1 - antennas[a]).norm();
    for (int k = 0; k < 5; ++k) {
      const std::complex<double> measured =
          s2.H(a, k) * std::conj(s1.H(a, k)) / std::norm(s1.H(a, k));
      const std::complex<double> expected =
          std::polar(1.0, -2.0 * std::numbers::pi * freqs[k] * dd / 299792458.0);
      CHECK(std::abs(measured / std::abs(measured) - expected) < 1e-6);
    }
  }
}

TEST_CASE("paper-scale channel matrix is 100x100 and finite") {
  SceneConfig scene = radio_scene(100, 100);
  const auto paths = make_room_paths({2.0, 1.5, 1.0}, scene);
  const auto snap = synth_channel({0.0, 2.0, 1.5, 1.0}, scene, paths);
  REQUIRE(snap.antennas() == 100);
  REQUIRE(snap.subcarriers() == 100);
  CHECK(snap.H.allFinite());
}

TEST_CASE("scaling all path gains scales the channel (reciprocity of scale)") {
  SceneConfig scene = radio_scene(4, 8);
  auto paths = make_room_paths({1.0, 2.0, 1.0}, scene);
  const auto base = synth_channel({0.0, 1.0, 2.0, 1.0}, scene, paths);
  const std::complex<double> factor{0.3, -1.2};
  for (auto& p : paths.paths) p.gain *= factor;
  const auto scaled = synth_channel({0.0, 1.0, 2.0, 1.0}, scene, paths);
  CHECK((scaled.H - factor * base.H).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("empty path set is rejected") {
  SceneConfig scene = radio_scene(2, 4);
  CHECK_THROWS_AS(synth_channel({0.0, 1.0, 1.0, 1.0}, scene, PathSet{}), InputError);
}

TEST_CASE("awgn hits the requested snr and is reproducible") {
  Rng rng(21);
  std::vector<double> signal(100000);
  for (auto& v : signal) v = rng.gaussian();

  const auto nearly_clean = add_awgn(signal, 200.0, 1);
  double diff_power = 0.0, sig_power = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    diff_power += (nearly_clean[i] - signal[i]) * (nearly_clean[i] - signal[i]);
    sig_power += signal[i] * signal[i];
  }
  CHECK(std::sqrt(diff_power / sig_power) < 1e-8);

  const auto noisy = add_awgn(signal, 20.0, 2);
  double noise_power = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    noise_power += (noisy[i] - signal[i]) * (noisy[i] - signal[i]);
  }
  noise_power /= static_cast<double>(signal.size()) * (sig_power / signal.size());
  const double off_db = std::abs(10.0 * std::log10(noise_power / 0.01));
  CHECK(off_db < 0.2);

  const auto again = add_awgn(signal, 20.0, 2);
  for (std::size_t i = 0; i < signal.size(); ++i) CHECK(noisy[i] == again[i]);

  std::vector<double> silence(128, 0.0);
  CHECK_THROWS_AS(add_awgn(silence, 10.0, 3), ConfigError);
}

TEST_CASE("complex awgn is circular and hits the snr") {
  Eigen::MatrixXcd h(50, 400);
  Rng rng(9);
  for (Eigen::Index c = 0; c < h.cols(); ++c) {
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      h(r, c) = {rng.gaussian(), rng.gaussian()};
    }
  }
  const auto noisy = add_awgn(h, 10.0, 5);
  const double sig_power = h.squaredNorm() / static_cast<double>(h.size());
  const double noise_power =
      (noisy - h).squaredNorm() / static_cast<double>(h.size());
  const double target = sig_power / 10.0;
  CHECK(std::abs(10.0 * std::log10(noise_power / target)) < 0.2);
}

TEST_CASE("wav round trip") {
  const auto path = std::filesystem::temp_directory_path() / "multiloc_test.wav";
  std::vector<double> samples(4800);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = 0.8 * std::sin(2.0 * std::numbers::pi * 440.0 * i / 96000.0);
  }
  write_wav16(path, samples, 96000);
  const auto wav = read_wav16(path);
  REQUIRE(wav.sample_rate == 96000);
  REQUIRE(wav.samples.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(std::abs(wav.samples[i] - samples[i]) <= 1.0 / 32767.0);
  }
  std::filesystem::remove(path);
}

TEST_CASE("csnp round trip with timestamps") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bin = dir / "multiloc_test.csnp";
  const auto times = dir / "multiloc_test_times.csv";

  std::vector<ChannelSnapshot> snaps(3);
  Rng rng(13);
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    snaps[i].t = 0.25 * static_cast<double>(i);
    snaps[i].H.resize(4, 6);
    for (Eigen::Index c = 0; c < 6; ++c) {
      for (Eigen::Index r = 0; r < 4; ++r) {
        snaps[i].H(r, c) = {rng.gaussian(), rng.gaussian()};
      }
    }
  }
  write_csnp(bin, snaps);
  write_snapshot_times(times, snaps);
  const auto loaded = load_snapshots(bin, times);
  REQUIRE(loaded.size() == 3);
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    CHECK(loaded[i].t == doctest::Approx(snaps[i].t));
    CHECK((loaded[i].H - snaps[i].H).cwiseAbs().maxCoeff() < 1e-6);
  }
  std::filesystem::remove(bin);
  std::filesystem::remove(times);
}
