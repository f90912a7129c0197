#include "excel/cli.hpp"

#include "excel/diaglog.hpp"
#include "excel/display.hpp"
#include "excel/errors.hpp"
#include "excel/report.hpp"
#include "excel/scanner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>

namespace excel::cli {

namespace {

std::string read_text_file(const std::string& path, const char* what)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, fmt::format("cannot open {} '{}': {}", what, path, std::strerror(errno)));
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError(path, fmt::format("cannot read {} '{}'", what, path));
    return data;
}

struct Measurement
{
    SourceStats stats;
    std::size_t errors = 0;
};

struct MeasureOptions
{
    std::string source;
    std::string log;
    std::string error_pattern;
    bool case_sensitive = false;
};

Measurement measure(const MeasureOptions& opt, Context& ctx)
{
    // Compile the pattern first so a bad override fails before any I/O.
    const ErrorPattern pattern = opt.error_pattern.empty() ? ErrorPattern()
                                                           : ErrorPattern(opt.error_pattern, opt.case_sensitive);
    Measurement m;
    m.stats = scan_source(read_text_file(opt.source, "source file"), opt.source);
    if (m.stats.unterminated_block_comment) {
        ctx.err << fmt::format("warning: {}: unterminated block comment at end of file\n", opt.source);
    }
    if (opt.log.empty()) {
        ctx.err << "notice: no log file given; assuming 0 errors\n";
    } else {
        m.errors = count_errors(read_text_file(opt.log, "log file"), pattern, opt.log).error_count;
    }
    return m;
}

void add_measure_options(CLI::App& cmd, MeasureOptions& opt)
{
    cmd.add_option("source", opt.source, "C-like source file to scan")->required();
    cmd.add_option("--log", opt.log, "Compiler log holding the error report");
    cmd.add_option("--error-pattern", opt.error_pattern, "Regular expression matching one error line");
    cmd.add_flag("--case-sensitive", opt.case_sensitive, "Match --error-pattern case-sensitively");
}

int cmd_scan(const MeasureOptions& opt, bool verdict, std::size_t threshold, Context& ctx)
{
    const Measurement m = measure(opt, ctx);
    ctx.out << render_scan_report(m.stats, m.errors).text();
    if (m.stats.loc == 0) {
        ctx.err << fmt::format("error: {}: error level is undefined because loc = 0\n", opt.source);
        return kUndefinedMetric;
    }
    if (verdict) {
        const Verdict v = classify_module(m.errors, threshold);
        ctx.out << fmt::format("Verdict = {} (threshold {})\n", v.value == Faultiness::Faulty ? "faulty" : "non faulty",
                               v.threshold_used);
    }
    return kOk;
}

std::string resolve_store(const std::string& flag, const Context& ctx)
{
    if (!flag.empty()) return flag;
    if (ctx.default_store && !ctx.default_store->empty()) return *ctx.default_store;
    throw InvalidArgumentError("no snapshot store given; pass --store or set EXCEL_STORE");
}

struct RecordOptions
{
    MeasureOptions measure;
    std::string project;
    std::string store;
    std::optional<double> t_hours;
    std::string wall_clock;
};

int cmd_record(const RecordOptions& opt, Context& ctx)
{
    const std::string store = resolve_store(opt.store, ctx);
    const Measurement m = measure(opt.measure, ctx);
    if (m.stats.loc == 0) {
        ctx.err << fmt::format("error: {}: error level is undefined because loc = 0; nothing recorded\n", opt.measure.source);
        return kUndefinedMetric;
    }
    const WallClock wall = opt.wall_clock.empty() ? ctx.now() : parse_rfc3339(opt.wall_clock);

    double t = 0.0;
    if (opt.t_hours) {
        t = *opt.t_hours;
    } else {
        const Trajectory existing = load_trajectory(store, opt.project);
        if (!existing.empty()) {
            const auto elapsed = wall - existing.front().wall_clock;
            t = std::chrono::duration<double, std::ratio<3600>>(elapsed).count();
        }
    }

    const QualitySnapshot snap = make_snapshot(opt.project, t, wall, m.stats, m.errors);
    append_snapshot(store, snap);
    ctx.out << fmt::format("Recorded project '{}' at t = {} h: loc = {}, errors = {}, Degree of excellence = {}\n",
                           opt.project, display::round_trip(t), snap.stats.loc, snap.error_count,
                           display::fixed(snap.metrics.degree_of_excellence));
    return kOk;
}

struct ReportOptions
{
    std::string project;
    std::string store;
    std::string format = "text";
    std::string output;
    TrajectoryReportOptions trajectory;
    std::optional<int> fit_degree;
};

int cmd_report(const ReportOptions& opt, Context& ctx)
{
    const std::string store = resolve_store(opt.store, ctx);
    if (!std::filesystem::exists(store)) throw IoError(store, fmt::format("snapshot store '{}' does not exist", store));
    const Trajectory traj = load_trajectory(store, opt.project);
    if (traj.empty()) {
        ctx.err << fmt::format("notice: no snapshots recorded for project '{}' in '{}'\n", opt.project, store);
        return kInsufficientData;
    }
    TrajectoryReportOptions options = opt.trajectory;
    options.fit_degree = opt.fit_degree;
    effort(options.alpha, RateEstimate{}); // reject a bad alpha even for single-snapshot reports

    std::string rendered;
    if (opt.format == "csv") rendered = render_trajectory_csv(traj);
    else if (opt.format == "svg") rendered = render_trajectory_svg(traj);
    else rendered = render_trajectory_text(traj, options);

    if (opt.output.empty()) {
        ctx.out << rendered;
    } else {
        std::ofstream file(opt.output, std::ios::binary);
        if (!file || !(file << rendered)) throw IoError(opt.output, fmt::format("cannot write '{}'", opt.output));
    }
    return kOk;
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Prompt-driven session: source file, log file, report, "Want to continue?".
int cmd_interactive(const MeasureOptions& base, Context& ctx)
{
    int status = kOk;
    for (;;) {
        ctx.out << "Enter the name of the file : " << std::flush;
        std::string source;
        if (!std::getline(ctx.in, source)) break;
        source = trim(source);
        std::ifstream probe(source, std::ios::binary);
        if (!probe) {
            ctx.out << "Unable to open the file!\n";
            status = kIoError;
        } else {
            ctx.out << "File opened successfully!\n";
            ctx.out << "Enter the name of the log file : " << std::flush;
            std::string log;
            std::getline(ctx.in, log);
            MeasureOptions opt = base;
            opt.source = source;
            opt.log = trim(log);
            try {
                const Measurement m = measure(opt, ctx);
                ctx.out << render_scan_report(m.stats, m.errors).text();
                status = m.stats.loc == 0 ? kUndefinedMetric : kOk;
            } catch (const Error& e) {
                ctx.err << "error: " << e.what() << '\n';
                status = kScanError;
            }
        }
        ctx.out << "Want to continue? y/n : " << std::flush;
        std::string answer;
        if (!std::getline(ctx.in, answer)) break;
        answer = trim(answer);
        if (answer != "y" && answer != "Y") break;
    }
    ctx.out << '\n';
    return status;
}

template <typename Fn>
int guarded(Context& ctx, Fn&& fn)
{
    try {
        return fn();
    } catch (const IoError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const EncodingError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kScanError;
    } catch (const PatternError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kPatternError;
    } catch (const UndefinedMetricError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kUndefinedMetric;
    } catch (const OrderingError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kOrderingError;
    } catch (const CorruptionError& e) {
        ctx.err << "error: corrupt snapshot store: " << e.what() << '\n';
        return kStoreCorrupt;
    } catch (const InsufficientDataError& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kInsufficientData;
    } catch (const Error& e) {
        ctx.err << "error: " << e.what() << '\n';
        return kInvalidArgument;
    }
}

} // namespace

WallClock system_now()
{
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

int run(const std::vector<std::string>& args, Context& ctx)
{
    CLI::App app{"Comment-aware LOC, error level and Degree of Excellence, with quality history", "excel"};
    app.require_subcommand(1);

    MeasureOptions scan_opt;
    bool verdict = false;
    std::size_t threshold = 0;
    auto* scan = app.add_subcommand("scan", "Scan a source file and print the quality report");
    add_measure_options(*scan, scan_opt);
    scan->add_flag("--verdict", verdict, "Append the faulty / non faulty verdict");
    scan->add_option("--threshold", threshold, "Errors tolerated before a module is faulty")->capture_default_str();

    RecordOptions record_opt;
    auto* record = app.add_subcommand("record", "Scan a source file and append a snapshot to the store");
    add_measure_options(*record, record_opt.measure);
    record->add_option("--project", record_opt.project, "Project id")->required();
    record->add_option("--store", record_opt.store, "Snapshot store (default: $EXCEL_STORE)");
    record->add_option("--t-hours", record_opt.t_hours, "Hours since the project's first snapshot")
        ->check(CLI::NonNegativeNumber);
    record->add_option("--wall-clock", record_opt.wall_clock, "RFC 3339 time of the snapshot (default: now)");

    ReportOptions report_opt;
    auto* report = app.add_subcommand("report", "Rates of improvement, trend and effort for a project");
    report->add_option("--project", report_opt.project, "Project id")->required();
    report->add_option("--store", report_opt.store, "Snapshot store (default: $EXCEL_STORE)");
    report->add_option("--alpha", report_opt.trajectory.alpha, "Developer-ability coefficient")->capture_default_str();
    report->add_option("--fit-degree", report_opt.fit_degree, "Also fit X(t) with a polynomial of this degree")
        ->check(CLI::Range(1, 3));
    report->add_option("--format", report_opt.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "svg"}))
        ->capture_default_str();
    report->add_option("--tolerance", report_opt.trajectory.tolerance, "Trend tolerance in points/hour")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    report->add_option("-o,--output", report_opt.output, "Write to this file instead of stdout");

    MeasureOptions interactive_opt;
    auto* interactive = app.add_subcommand("interactive", "Prompt for file names like the original console tool");
    interactive->add_option("--error-pattern", interactive_opt.error_pattern, "Regular expression matching one error line");
    interactive->add_flag("--case-sensitive", interactive_opt.case_sensitive, "Match --error-pattern case-sensitively");

    std::vector<const char*> argv{"excel"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, ctx.out, ctx.err);
        return code == 0 ? kOk : kUsage;
    }

    return guarded(ctx, [&]() -> int {
        if (*scan) return cmd_scan(scan_opt, verdict, threshold, ctx);
        if (*record) return cmd_record(record_opt, ctx);
        if (*report) return cmd_report(report_opt, ctx);
        return cmd_interactive(interactive_opt, ctx);
    });
}

} // namespace excel::cli
