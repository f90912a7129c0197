#include "excel/report.hpp"

#include "excel/display.hpp"
#include "excel/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iterator>

namespace excel {

namespace {

constexpr int kRateDecimals = 4;

std::string signed_fixed(double v, int decimals)
{
    std::string s = display::fixed(v, decimals);
    if (v > 0 && s.find_first_not_of("0.") != std::string::npos) s.insert(s.begin(), '+');
    return s;
}

std::string hours(double t)
{
    return display::round_trip(t);
}

std::string polynomial_text(const PolyFit& fit)
{
    std::string out = fmt::format("{:.6g}", fit.coefficients[0]);
    for (std::size_t k = 1; k < fit.coefficients.size(); ++k) {
        const double c = fit.coefficients[k];
        out += fmt::format(" {} {:.6g} t", c < 0 ? '-' : '+', std::fabs(c));
        if (k > 1) out += fmt::format("^{}", k);
    }
    return out;
}

} // namespace

std::string ReportRendering::text() const
{
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

ReportRendering render_scan_report(const SourceStats& stats, std::size_t error_count)
{
    ReportRendering r;
    r.lines.push_back(fmt::format("The number of lines in the file is : {}", stats.total_lines));
    r.lines.push_back(fmt::format("Number of comment lines is : {}", stats.comment_lines));
    r.lines.push_back(fmt::format("The number of for loops is : {}", stats.for_count));
    r.lines.push_back(fmt::format("The number of while loops is : {}", stats.while_count));
    r.lines.push_back(fmt::format("Number of errors = {}", error_count));
    r.lines.push_back(fmt::format("loc = {}", stats.loc));
    std::string el = kUndefinedMetricText;
    std::string x = kUndefinedMetricText;
    if (stats.loc > 0) {
        const QualityMetrics m = compute_metrics(error_count, stats.loc);
        el = display::fixed(m.error_level_percent);
        x = display::fixed(m.degree_of_excellence);
    }
    r.lines.push_back(fmt::format("Error level w.r.t LOC = {}", el));
    r.lines.push_back(fmt::format("Quality Level or Degree of excellence = {}", x));
    return r;
}

std::string render_trajectory_text(const Trajectory& traj, const TrajectoryReportOptions& options)
{
    if (traj.empty()) throw InsufficientDataError(fmt::format("no snapshots for project '{}'", traj.project_id()));

    std::string out;
    auto line = [&out](std::string s) {
        out += s;
        out += '\n';
    };

    line(fmt::format("Project : {}", traj.project_id()));
    line(fmt::format("Snapshots : {}", traj.size()));
    for (const auto& s : traj.snapshots()) {
        line(fmt::format("t = {} h : errors = {}, loc = {}, Error level w.r.t LOC = {}, Degree of excellence = {}",
                         hours(s.t_hours), s.error_count, s.stats.loc, display::fixed(s.metrics.error_level_percent),
                         display::fixed(s.metrics.degree_of_excellence)));
    }
    const auto& first = traj.front();
    const auto& last = traj.back();
    line(fmt::format("Quality Level or Degree of excellence = {}", display::fixed(last.metrics.degree_of_excellence)));

    if (traj.size() < 2) {
        line("Rate of improvement : insufficient data (need at least 2 snapshots)");
        return out;
    }

    const double gain = improvement(first.metrics.degree_of_excellence, last.metrics.degree_of_excellence);
    line(fmt::format("Improvement (X_f - X_i) = {} points over {} h", signed_fixed(gain, 2),
                     hours(last.t_hours - first.t_hours)));
    line("Interval rates of improvement (points/hour) :");
    for (const auto& r : interval_rates(traj)) {
        line(fmt::format("  [{} h, {} h] : {}", hours(r.t_start), hours(r.t_end), display::fixed(r.value, kRateDecimals)));
    }

    const RateEstimate average = secant_rate(traj, first.t_hours, last.t_hours);
    const RateEstimate instant = instantaneous_rate(traj, last.t_hours);
    line(fmt::format("Average rate of improvement = {} points/hour", display::fixed(average.value, kRateDecimals)));
    line(fmt::format("Instantaneous rate of improvement at t = {} h = {} points/hour", hours(last.t_hours),
                     display::fixed(instant.value, kRateDecimals)));
    line(fmt::format("Trend = {} (tolerance {})", to_string(classify_trend(traj, options.tolerance)), options.tolerance));

    const std::string alpha = display::round_trip(options.alpha);
    line(fmt::format("Average effort (alpha = {}) = {}", alpha, display::fixed(effort(options.alpha, average).effort, kRateDecimals)));
    line(fmt::format("Instantaneous effort (alpha = {}) = {}", alpha,
                     display::fixed(effort(options.alpha, instant).effort, kRateDecimals)));

    if (options.fit_degree) {
        const int degree = *options.fit_degree;
        if (traj.size() < static_cast<std::size_t>(degree) + 1) {
            line(fmt::format("Fit (degree {}) : insufficient data (need at least {} snapshots)", degree, degree + 1));
        } else {
            const PolyFit fit = fit_polynomial(traj, degree);
            const RateEstimate d = fit_rate(fit, traj, last.t_hours);
            line(fmt::format("Fit (degree {}) : X(t) = {}, residual sum of squares = {:.6g}", degree, polynomial_text(fit),
                             fit.residual_sum_of_squares));
            line(fmt::format("Fit rate of improvement at t = {} h = {} points/hour", hours(last.t_hours),
                             display::fixed(d.value, kRateDecimals)));
            line(fmt::format("Fit effort (alpha = {}) = {}", alpha, display::fixed(effort(options.alpha, d).effort, kRateDecimals)));
        }
    }
    return out;
}

std::string render_trajectory_csv(const Trajectory& traj)
{
    std::string out = "t_hours,x,el_percent,errors,loc,rate_from_previous\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& s = traj[i];
        std::string rate;
        if (i > 0) rate = display::round_trip(secant_rate(traj, traj[i - 1].t_hours, s.t_hours).value);
        out += fmt::format("{},{},{},{},{},{}\n", display::round_trip(s.t_hours),
                           display::round_trip(s.metrics.degree_of_excellence),
                           display::round_trip(s.metrics.error_level_percent), s.error_count, s.stats.loc, rate);
    }
    return out;
}

std::string render_trajectory_svg(const Trajectory& traj)
{
    constexpr double width = 640, height = 400;
    constexpr double left = 80, right = 20, top = 40, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double t_min = 0, t_max = 1, x_min = 0, x_max = 100;
    if (!traj.empty()) {
        t_min = traj.front().t_hours;
        t_max = traj.back().t_hours;
        const auto [lo, hi] = std::minmax_element(traj.snapshots().begin(), traj.snapshots().end(),
                                                  [](const QualitySnapshot& a, const QualitySnapshot& b) {
                                                      return a.metrics.degree_of_excellence < b.metrics.degree_of_excellence;
                                                  });
        x_min = lo->metrics.degree_of_excellence;
        x_max = hi->metrics.degree_of_excellence;
    }
    if (t_max - t_min <= 0) {
        t_min -= 1;
        t_max += 1;
    }
    if (x_max - x_min <= 0) {
        x_min -= 1;
        x_max += 1;
    }
    const auto px = [&](double t) { return left + (t - t_min) / (t_max - t_min) * plot_w; };
    const auto py = [&](double x) { return top + (x_max - x) / (x_max - x_min) * plot_h; };

    std::string out;
    auto append = [&out](std::string s) {
        out += s;
        out += '\n';
    };
    append(fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)", width,
                       height, width, height));
    append(R"(<rect width="100%" height="100%" fill="white"/>)");
    std::string title = traj.project_id();
    for (const auto& [from, to] : {std::pair{'&', "&amp;"}, std::pair{'<', "&lt;"}, std::pair{'>', "&gt;"}}) {
        for (std::size_t p = title.find(from); p != std::string::npos; p = title.find(from, p + 1)) {
            title.replace(p, 1, to);
        }
    }
    append(fmt::format(R"(<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>)",
                       width / 2, title));
    append(fmt::format(R"(<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>)", left, top + plot_h, left + plot_w));
    append(fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>)", left, top, top + plot_h));
    append(fmt::format(R"(<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">time (hours)</text>)",
                       left + plot_w / 2, height - 15));
    append(fmt::format(R"(<text x="20" y="{0}" text-anchor="middle" font-family="sans-serif" font-size="12" )"
                       R"svg(transform="rotate(-90 20 {0})">Degree of Excellence (%)</text>)svg",
                       top + plot_h / 2));

    const auto tick = [&](double x, double y, const char* anchor, const std::string& label) {
        append(fmt::format(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="{}" font-family="sans-serif" font-size="10">{}</text>)", x,
                           y, anchor, label));
    };
    tick(px(t_min), top + plot_h + 16, "middle", display::fixed(t_min, 2));
    tick(px(t_max), top + plot_h + 16, "middle", display::fixed(t_max, 2));
    tick(left - 6, py(x_min) + 4, "end", display::fixed(x_min, 2));
    tick(left - 6, py(x_max) + 4, "end", display::fixed(x_max, 2));

    std::vector<std::string> points;
    for (const auto& s : traj.snapshots()) {
        points.push_back(fmt::format("{:.2f},{:.2f}", px(s.t_hours), py(s.metrics.degree_of_excellence)));
    }
    append(fmt::format(R"(<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>)", fmt::join(points, " ")));
    for (const auto& s : traj.snapshots()) {
        append(fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="3" fill="steelblue"/>)", px(s.t_hours),
                           py(s.metrics.degree_of_excellence)));
    }
    append("</svg>");
    return out;
}

} // namespace excel
