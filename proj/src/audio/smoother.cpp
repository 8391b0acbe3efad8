#include "multiloc/audio/smoother.hpp"

#include <Eigen/LU>
#include <cmath>
#include <vector>

#include "multiloc/core/errors.hpp"

namespace multiloc::audio {

void SmootherConfig::validate() const {
  if (!(rate > 0.0)) throw ConfigError("smoother rate must be positive");
  if (!(accel_noise > 0.0)) throw ConfigError("process noise must be positive");
  if (!(meas_noise > 0.0)) throw ConfigError("measurement noise must be positive");
}

namespace {

using Eigen::Matrix2d;
using Eigen::Vector2d;

// One axis of the constant-velocity filter, state (position, velocity).
// The filter starts at the first localized frame, anchored on its
// measurement; earlier frames are back-extrapolated afterwards.
std::vector<double> smooth_axis(std::span<const RawFrameEstimate> raw,
                                std::size_t first, int axis,
                                const SmootherConfig& cfg) {
  const std::size_t n = raw.size();
  const std::size_t m = n - first;
  const double dt = 1.0 / cfg.rate;
  const double q = cfg.accel_noise * cfg.accel_noise;
  const double r = cfg.meas_noise * cfg.meas_noise;

  Matrix2d f;
  f << 1.0, dt, 0.0, 1.0;
  Matrix2d qm;  // white-acceleration process noise
  qm << q * dt * dt * dt / 3.0, q * dt * dt / 2.0,
        q * dt * dt / 2.0,      q * dt;

  std::vector<Vector2d> x_pred(m), x_filt(m);
  std::vector<Matrix2d> p_pred(m), p_filt(m);

  Vector2d x;
  x << (*raw[first].position)(axis), 0.0;
  Matrix2d p = Matrix2d::Zero();
  p(0, 0) = r;
  p(1, 1) = 1e2;  // velocity initially unknown

  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) {
      x = f * x;
      p = f * p * f.transpose() + qm;
    }
    x_pred[i] = x;
    p_pred[i] = p;

    if (i > 0 && raw[first + i].position) {
      const double z = (*raw[first + i].position)(axis);
      const double s = p(0, 0) + r;
      const Vector2d gain = p.col(0) / s;
      x += gain * (z - x(0));
      p -= gain * p.row(0);
    }
    x_filt[i] = x;
    p_filt[i] = p;
  }

  // RTS backward pass.
  std::vector<Vector2d> x_smooth(m);
  x_smooth[m - 1] = x_filt[m - 1];
  Matrix2d p_smooth = p_filt[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    const Matrix2d gain = p_filt[k] * f.transpose() * p_pred[k + 1].inverse();
    x_smooth[k] = x_filt[k] + gain * (x_smooth[k + 1] - x_pred[k + 1]);
    p_smooth = p_filt[k] + gain * (p_smooth - p_pred[k + 1]) * gain.transpose();
  }

  std::vector<double> position(n);
  for (std::size_t i = 0; i < m; ++i) position[first + i] = x_smooth[i](0);
  // Leading unlocalized frames coast backwards on the first smoothed state.
  for (std::size_t i = first; i-- > 0;) {
    position[i] = x_smooth[0](0) -
                  x_smooth[0](1) * dt * static_cast<double>(first - i);
  }
  return position;
}

}  // namespace

Trajectory smooth_trajectory(std::span<const RawFrameEstimate> raw,
                             const SmootherConfig& cfg) {
  cfg.validate();
  if (raw.empty()) throw PipelineError("no frames to smooth");

  std::size_t first = raw.size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].position) {
      first = i;
      break;
    }
  }
  if (first == raw.size()) throw PipelineError("no localized frames to smooth");

  const double dt = 1.0 / cfg.rate;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (std::abs(raw[i].t - raw[i - 1].t - dt) > 1e-6) {
      throw InputError("raw frame estimates must lie on the uniform frame grid");
    }
  }

  const auto ax = smooth_axis(raw, first, 0, cfg);
  const auto ay = smooth_axis(raw, first, 1, cfg);
  const auto az = smooth_axis(raw, first, 2, cfg);

  std::vector<TimedPosition> samples;
  samples.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    samples.push_back({raw[i].t, ax[i], ay[i], az[i]});
  }
  return Trajectory(std::move(samples), cfg.rate);
}

}  // namespace multiloc::audio
