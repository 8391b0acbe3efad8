#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "multiloc/eval/evaluate.hpp"

namespace multiloc::eval {

struct ReportEntry {
  std::string trajectory;
  std::string sensor;
  ErrorStats stats;
  int drops = 0;
};

// Rounds to two significant figures, the convention of the result tables.
std::string format_sig2(double value);

// CSV schema: trajectory,sensor,mean_cm,sd_cm,median_cm,count,drops.
// Rows keep the input order.
void write_report_csv(std::span<const ReportEntry> entries,
                      const std::filesystem::path& path);

// Human-readable table: Trajectory Name | Mean (cm) | SD (cm) | Median (cm).
std::string render_report_table(std::span<const ReportEntry> entries);

// Ground truth and estimate polylines (x-y projection) as an SVG overlay.
void write_overlay_svg(const Trajectory& gt, const Trajectory& est,
                       const std::filesystem::path& path);

}  // namespace multiloc::eval
