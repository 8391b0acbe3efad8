#include "multiloc/sim/trajectory_gen.hpp"

#include <cmath>
#include <numbers>

#include "multiloc/core/errors.hpp"

namespace multiloc::sim {

namespace {

using Eigen::Vector2d;

struct Polyline {
  std::vector<Vector2d> points;
  bool closed = false;

  double length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      total += (points[i] - points[i - 1]).norm();
    }
    if (closed && points.size() > 1) {
      total += (points.front() - points.back()).norm();
    }
    return total;
  }

  // Position at arc length s from the first point, following segment order.
  Vector2d at(double s) const {
    const std::size_t segments = closed ? points.size() : points.size() - 1;
    for (std::size_t i = 0; i < segments; ++i) {
      const Vector2d& a = points[i];
      const Vector2d& b = points[(i + 1) % points.size()];
      const double seg = (b - a).norm();
      if (s <= seg) {
        const double alpha = seg > 0.0 ? std::clamp(s / seg, 0.0, 1.0) : 0.0;
        return a + alpha * (b - a);
      }
      s -= seg;
    }
    // Accumulated rounding past the end lands on the path end.
    return closed ? points.front() : points.back();
  }
};

void check_in_area(const Vector2d& p, const SceneConfig& scene) {
  if (p.x() < -1e-9 || p.x() > scene.area_x + 1e-9 || p.y() < -1e-9 ||
      p.y() > scene.area_y + 1e-9) {
    throw GeometryError("trajectory pattern leaves the scene area");
  }
}

Polyline grid_path(const TrajectorySpec& spec, const SceneConfig& scene) {
  const double m = spec.margin;
  if (2.0 * m >= scene.area_x || 2.0 * m >= scene.area_y) {
    throw GeometryError("grid margin leaves no usable area");
  }
  if (!(spec.line_spacing > 0.0)) throw GeometryError("grid line spacing must be positive");
  Polyline path;
  // Forward/backward sweep lines along x, stepping in y.
  bool forward = true;
  for (double y = m; y <= scene.area_y - m + 1e-12; y += spec.line_spacing) {
    const double x0 = forward ? m : scene.area_x - m;
    const double x1 = forward ? scene.area_x - m : m;
    path.points.emplace_back(x0, y);
    path.points.emplace_back(x1, y);
    forward = !forward;
  }
  return path;
}

Polyline rectangle_path(const TrajectorySpec& spec, const SceneConfig& scene) {
  const double m = spec.margin;
  if (2.0 * m >= scene.area_x || 2.0 * m >= scene.area_y) {
    throw GeometryError("rectangle margin leaves no usable area");
  }
  Polyline path;
  path.closed = true;
  path.points = {Vector2d(m, m), Vector2d(scene.area_x - m, m),
                 Vector2d(scene.area_x - m, scene.area_y - m),
                 Vector2d(m, scene.area_y - m)};
  return path;
}

Polyline waypoint_path(const TrajectorySpec& spec, const SceneConfig& scene) {
  if (spec.waypoints.size() < 2) {
    throw GeometryError("waypoint pattern needs at least 2 waypoints");
  }
  Polyline path;
  for (const auto& w : spec.waypoints) {
    Vector2d p(w[0], w[1]);
    check_in_area(p, scene);
    path.points.push_back(p);
  }
  return path;
}

}  // namespace

Trajectory gen_trajectory(const TrajectorySpec& spec, const SceneConfig& scene) {
  scene.validate();
  if (!(spec.speed > 0.0)) throw ConfigError("trajectory speed must be positive");
  if (!(spec.rate > 0.0)) throw ConfigError("trajectory rate must be positive");

  const double step = spec.speed / spec.rate;

  if (spec.pattern == PathPattern::Circle) {
    const Vector2d center = spec.center
        ? Vector2d((*spec.center)[0], (*spec.center)[1])
        : Vector2d(scene.area_x / 2.0, scene.area_y / 2.0);
    if (spec.radius < 0.0) throw GeometryError("circle radius must be non-negative");
    if (center.x() - spec.radius < 0.0 || center.x() + spec.radius > scene.area_x ||
        center.y() - spec.radius < 0.0 || center.y() + spec.radius > scene.area_y) {
      throw GeometryError("circle does not fit inside the scene area");
    }
    const double circumference = 2.0 * std::numbers::pi * spec.radius;
    const double total = spec.duration ? *spec.duration * spec.speed
                                       : (spec.radius > 0.0 ? circumference : spec.speed);
    const auto n = static_cast<std::size_t>(std::floor(total / step)) + 1;
    std::vector<TimedPosition> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = static_cast<double>(i) * step;
      const double theta = spec.radius > 0.0 ? s / spec.radius : 0.0;
      const double x = center.x() + spec.radius * std::cos(theta);
      const double y = center.y() + spec.radius * std::sin(theta);
      samples.push_back({spec.start_time + static_cast<double>(i) / spec.rate, x, y, spec.z});
    }
    return Trajectory(std::move(samples), spec.rate);
  }

  Polyline path;
  switch (spec.pattern) {
    case PathPattern::Grid: path = grid_path(spec, scene); break;
    case PathPattern::Rectangle: path = rectangle_path(spec, scene); break;
    case PathPattern::Waypoints: path = waypoint_path(spec, scene); break;
    case PathPattern::Circle: break;  // handled above
  }
  for (const auto& p : path.points) check_in_area(p, scene);

  const double len = path.length();
  if (!(len > 0.0)) throw GeometryError("trajectory path has zero length");
  const double total = spec.duration ? *spec.duration * spec.speed : len;

  std::vector<TimedPosition> samples;
  samples.reserve(static_cast<std::size_t>(total / step) + 2);
  for (std::size_t i = 0;; ++i) {
    const double s = static_cast<double>(i) * step;
    if (s > total + 1e-12) break;
    double along;
    if (path.closed) {
      along = std::fmod(s, len);
    } else {
      // Ping-pong: walk to the far end and back.
      const double cycle = std::fmod(s, 2.0 * len);
      along = cycle <= len ? cycle : 2.0 * len - cycle;
    }
    const Vector2d p = path.at(along);
    samples.push_back({spec.start_time + static_cast<double>(i) / spec.rate, p.x(), p.y(), spec.z});
  }
  return Trajectory(std::move(samples), spec.rate);
}

}  // namespace multiloc::sim
