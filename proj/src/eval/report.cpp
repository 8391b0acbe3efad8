#include "multiloc/eval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "multiloc/core/errors.hpp"

namespace multiloc::eval {

std::string format_sig2(double value) {
  if (!std::isfinite(value)) return "nan";
  if (value == 0.0) return "0.0";
  const double magnitude = std::floor(std::log10(std::abs(value)));
  const int decimals = std::max(0, 1 - static_cast<int>(magnitude));
  const double scale = std::pow(10.0, magnitude - 1);
  const double rounded = std::round(value / scale) * scale;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  return buf;
}

namespace {

std::string format_full(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void validate_entries(std::span<const ReportEntry> entries) {
  if (entries.empty()) throw InputError("report needs at least one result");
  for (const auto& e : entries) {
    if (e.trajectory.empty()) throw InputError("report entry has an empty trajectory label");
    if (e.sensor.empty()) throw InputError("report entry has an empty sensor label");
  }
}

}  // namespace

void write_report_csv(std::span<const ReportEntry> entries,
                      const std::filesystem::path& path) {
  validate_entries(entries);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report file " + path.string());
  out << "trajectory,sensor,mean_cm,sd_cm,median_cm,count,drops\n";
  for (const auto& e : entries) {
    out << e.trajectory << ',' << e.sensor << ',' << format_full(e.stats.mean_m * 100.0)
        << ',' << format_full(e.stats.sd_m * 100.0) << ','
        << format_full(e.stats.median_m * 100.0) << ',' << e.stats.count << ','
        << e.drops << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::string render_report_table(std::span<const ReportEntry> entries) {
  validate_entries(entries);
  std::ostringstream out;
  out << "Trajectory Name | Sensor | Mean (cm) | SD (cm) | Median (cm)\n";
  out << "----------------|--------|-----------|---------|------------\n";
  for (const auto& e : entries) {
    out << e.trajectory << " | " << e.sensor << " | "
        << format_sig2(e.stats.mean_m * 100.0) << " | "
        << format_sig2(e.stats.sd_m * 100.0) << " | "
        << format_sig2(e.stats.median_m * 100.0) << '\n';
  }
  return out.str();
}

void write_overlay_svg(const Trajectory& gt, const Trajectory& est,
                       const std::filesystem::path& path) {
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  auto grow = [&](const Trajectory& t) {
    for (const auto& s : t.samples()) {
      min_x = std::min(min_x, s.x);
      max_x = std::max(max_x, s.x);
      min_y = std::min(min_y, s.y);
      max_y = std::max(max_y, s.y);
    }
  };
  grow(gt);
  grow(est);
  const double pad = 0.1 * std::max({max_x - min_x, max_y - min_y, 1e-3});
  min_x -= pad;
  min_y -= pad;
  max_x += pad;
  max_y += pad;

  const double width = 640.0;
  const double scale = width / (max_x - min_x);
  const double height = (max_y - min_y) * scale;
  // SVG y axis points down; flip so +y is up in the plot.
  auto px = [&](double x) { return (x - min_x) * scale; };
  auto py = [&](double y) { return height - (y - min_y) * scale; };

  auto polyline = [&](const Trajectory& t, const char* color) {
    std::ostringstream s;
    s << "  <polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : t.samples()) {
      s << format_full(px(p.x)) << ',' << format_full(py(p.y)) << ' ';
    }
    s << "\"/>\n";
    return s.str();
  };

  std::ofstream out(path);
  if (!out) throw IoError("cannot write svg file " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_full(width)
      << "\" height=\"" << format_full(height) << "\">\n";
  out << polyline(gt, "black");
  out << polyline(est, "blue");
  out << "</svg>\n";
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace multiloc::eval
