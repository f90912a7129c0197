// Text, CSV and SVG renderings of scan results and quality trajectories.
#pragma once

#include "excel/history.hpp"
#include "excel/scanner.hpp"
#include "excel/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace excel {

/// The eight-line scan report:
///
///   The number of lines in the file is : {total}
///   Number of comment lines is : {comment}
///   The number of for loops is : {for}
///   The number of while loops is : {while}
///   Number of errors = {errors}
///   loc = {loc}
///   Error level w.r.t LOC = {EL%, 2 dp}
///   Quality Level or Degree of excellence = {X, 2 dp}
///
/// With loc == 0 the last two values read "undefined (loc = 0)".
struct ReportRendering
{
    std::vector<std::string> lines;

    /// Lines joined with '\n', each newline-terminated.
    std::string text() const;
};

ReportRendering render_scan_report(const SourceStats& stats, std::size_t error_count);

inline constexpr const char* kUndefinedMetricText = "undefined (loc = 0)";

enum class ReportFormat
{
    Text,
    Csv,
    Svg,
};

struct TrajectoryReportOptions
{
    double alpha = kDefaultAlpha;
    std::optional<int> fit_degree;
    double tolerance = kDefaultTrendTolerance;
};

/// Per-snapshot metrics, interval rates, improvement, instantaneous rate at
/// the latest snapshot, trend and effort. A single snapshot prints metrics
/// and marks the rates as insufficient data.
std::string render_trajectory_text(const Trajectory& traj, const TrajectoryReportOptions& options);

/// Header plus one row per snapshot:
/// t_hours,x,el_percent,errors,loc,rate_from_previous
std::string render_trajectory_csv(const Trajectory& traj);

/// Line chart of Degree of Excellence against time.
std::string render_trajectory_svg(const Trajectory& traj);

} // namespace excel
