#include "multiloc/core/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "multiloc/core/errors.hpp"

namespace multiloc {

Trajectory resample_trajectory(const Trajectory& traj, double rate_hz) {
  if (traj.size() < 2) {
    throw InputError("resample needs at least 2 samples");
  }
  if (!(rate_hz > 0.0)) throw ConfigError("resample rate must be positive");

  const double t0 = traj.start_time();
  const double t1 = traj.end_time();
  const double dt = 1.0 / rate_hz;
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) * rate_hz)) + 1;

  std::vector<TimedPosition> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    const Eigen::Vector3d p = traj.position_at(t);
    out.push_back({t, p.x(), p.y(), p.z()});
  }
  return Trajectory(std::move(out), rate_hz);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const std::filesystem::path& path) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw IoError("bad numeric field '" + std::string(s) + "' in " + path.string());
  }
  return v;
}

}  // namespace

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trajectory file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trajectory file " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,x,y,z") {
    throw IoError("expected header 't,x,y,z' in " + path.string());
  }

  std::vector<TimedPosition> samples;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (int f = 0; f < 4; ++f) {
      const auto comma = rest.find(',');
      if (f < 3) {
        if (comma == std::string_view::npos) {
          throw IoError("expected 4 fields per row in " + path.string());
        }
        fields[f] = rest.substr(0, comma);
        rest.remove_prefix(comma + 1);
      } else {
        fields[f] = rest;
      }
    }
    samples.push_back({parse_double(fields[0], path), parse_double(fields[1], path),
                       parse_double(fields[2], path), parse_double(fields[3], path)});
  }
  if (samples.empty()) throw IoError("no samples in " + path.string());
  return Trajectory(std::move(samples));
}

void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trajectory file " + path.string());
  out << "t,x,y,z\n";
  for (const auto& s : traj.samples()) {
    out << format_double(s.t) << ',' << format_double(s.x) << ','
        << format_double(s.y) << ',' << format_double(s.z) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace multiloc
