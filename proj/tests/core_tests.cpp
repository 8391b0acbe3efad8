#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/fft.hpp"
#include "multiloc/core/rng.hpp"
#include "multiloc/core/trajectory.hpp"
#include "multiloc/core/types.hpp"

using namespace multiloc;

namespace {

// Independent piecewise-linear evaluator used as the resampling oracle:
// scans for the bracketing pair instead of reusing Trajectory internals.
Eigen::Vector3d oracle_interp(const std::vector<TimedPosition>& samples, double t) {
  if (t <= samples.front().t) return samples.front().position();
  if (t >= samples.back().t) return samples.back().position();
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (t <= samples[i].t) {
      const auto& a = samples[i - 1];
      const auto& b = samples[i];
      const double alpha = (t - a.t) / (b.t - a.t);
      return a.position() + alpha * (b.position() - a.position());
    }
  }
  return samples.back().position();
}

}  // namespace

TEST_CASE("trajectory validation") {
  CHECK_THROWS_AS(Trajectory({}), InputError);
  CHECK_THROWS_AS(Trajectory({{0.0, 0, 0, 0}, {0.0, 1, 0, 0}}), InputError);
  CHECK_THROWS_AS(Trajectory({{1.0, 0, 0, 0}, {0.5, 1, 0, 0}}), InputError);
  CHECK_THROWS_AS(Trajectory({{0.0, std::nan(""), 0, 0}}), InputError);
  CHECK_NOTHROW(Trajectory({{0.0, 1, 2, 3}}));
}

TEST_CASE("resample keeps an already-uniform trajectory identical") {
  std::vector<TimedPosition> samples;
  for (int i = 0; i < 20; ++i) {
    const double t = i * 0.1;
    samples.push_back({t, std::sin(t), std::cos(t), 1.0});
  }
  Trajectory traj(samples);
  Trajectory res = resample_trajectory(traj, 10.0);
  REQUIRE(res.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(res.samples()[i].t == doctest::Approx(samples[i].t).epsilon(1e-12));
    CHECK(res.samples()[i].x == doctest::Approx(samples[i].x).epsilon(1e-12));
    CHECK(res.samples()[i].y == doctest::Approx(samples[i].y).epsilon(1e-12));
  }
}

TEST_CASE("resample linear midpoint") {
  Trajectory traj({{0.0, 0, 0, 0}, {1.0, 2, 0, 0}});
  Trajectory res = resample_trajectory(traj, 2.0);
  REQUIRE(res.size() == 3);
  CHECK(res.samples()[1].t == doctest::Approx(0.5));
  CHECK(res.samples()[1].x == doctest::Approx(1.0));
}

TEST_CASE("resample matches the piecewise-linear oracle on a random 3-point trajectory") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TimedPosition> samples;
    double t = rng.uniform(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
      samples.push_back({t, rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)});
      t += rng.uniform(0.05, 1.0);
    }
    Trajectory traj(samples);
    Trajectory res = resample_trajectory(traj, 10.0);
    for (const auto& s : res.samples()) {
      const Eigen::Vector3d expect = oracle_interp(samples, s.t);
      CHECK((s.position() - expect).norm() < 1e-12);
      CHECK(s.t >= traj.start_time() - 1e-12);
      CHECK(s.t <= traj.end_time() + 1e-12);
    }
  }
}

TEST_CASE("resampled positions stay inside the bracketing hull per axis") {
  Rng rng(11);
  std::vector<TimedPosition> samples;
  double t = 0.0;
  for (int i = 0; i < 8; ++i) {
    samples.push_back({t, rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
    t += rng.uniform(0.02, 0.4);
  }
  Trajectory traj(samples);
  Trajectory res = resample_trajectory(traj, 37.0);
  for (const auto& s : res.samples()) {
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (s.t >= samples[i - 1].t && s.t <= samples[i].t) {
        for (int axis = 0; axis < 3; ++axis) {
          const double lo = std::min(samples[i - 1].position()(axis),
                                     samples[i].position()(axis));
          const double hi = std::max(samples[i - 1].position()(axis),
                                     samples[i].position()(axis));
          CHECK(s.position()(axis) >= lo - 1e-12);
          CHECK(s.position()(axis) <= hi + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("resample rejects degenerate input") {
  Trajectory one({{0.0, 0, 0, 0}});
  CHECK_THROWS_AS(resample_trajectory(one, 10.0), InputError);
}

TEST_CASE("mic array geometry checks") {
  using V = Eigen::Vector3d;
  CHECK_THROWS_AS(MicArray({V(0, 0, 0), V(1, 0, 0), V(0, 1, 0)}), GeometryError);
  CHECK_THROWS_AS(MicArray({V(0, 0, 0), V(0, 0, 0), V(0, 1, 0), V(1, 1, 0)}),
                  GeometryError);
  CHECK_THROWS_AS(MicArray({V(0, 0, 0), V(1, 0, 0), V(2, 0, 0), V(3, 0, 0)}),
                  GeometryError);
  CHECK_NOTHROW(MicArray({V(0, 0, 0), V(1, 0, 0), V(0, 1, 0), V(1, 1, 1)}));
}

TEST_CASE("trajectory csv round trip") {
  const auto path = std::filesystem::temp_directory_path() / "multiloc_traj_test.csv";
  Trajectory traj({{0.0, 1.25, -3.5, 0.75}, {0.25, 2.0, 0.0, 1.0}, {1.5, -1.0, 4.0, 0.5}});
  save_trajectory_csv(traj, path);
  Trajectory loaded = load_trajectory_csv(path);
  REQUIRE(loaded.size() == traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(loaded.samples()[i].t == doctest::Approx(traj.samples()[i].t).epsilon(1e-10));
    CHECK(loaded.samples()[i].x == doctest::Approx(traj.samples()[i].x).epsilon(1e-10));
  }
  std::filesystem::remove(path);
}

TEST_CASE("trajectory csv rejects a bad header") {
  const auto path = std::filesystem::temp_directory_path() / "multiloc_bad_header.csv";
  {
    std::ofstream out(path);
    out << "time,x,y,z\n0,0,0,0\n";
  }
  CHECK_THROWS_AS(load_trajectory_csv(path), IoError);
  std::filesystem::remove(path);
}

TEST_CASE("seeded rng streams are reproducible and label-separated") {
  Rng a(derive_seed(42, "stage", 0));
  Rng b(derive_seed(42, "stage", 0));
  Rng c(derive_seed(42, "other", 0));
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    if (va != c.next_u64()) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("rng gaussian has roughly standard moments") {
  Rng rng(123);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("fft round trip and impulse spectrum") {
  std::vector<std::complex<double>> x(64);
  Rng rng(5);
  for (auto& v : x) v = {rng.gaussian(), rng.gaussian()};
  const auto back = fft::inverse(fft::forward(x));
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(back[i] - x[i]) < 1e-12);
  }

  std::vector<double> delta(32, 0.0);
  delta[0] = 1.0;
  const auto spec = fft::forward_real(delta, 32);
  for (const auto& v : spec) CHECK(std::abs(v - 1.0) < 1e-12);
}
