#include "excel/history.hpp"

#include "excel/display.hpp"
#include "excel/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

namespace excel {

namespace {

using json = nlohmann::json;
using namespace std::chrono;

template <typename Int>
bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len, Int& out)
{
    if (pos + len > text.size()) return false;
    const char* first = text.data() + pos;
    const char* last = first + len;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::size_t get_count(const json& obj, const char* key, std::size_t line)
{
    const auto it = obj.find(key);
    if (it == obj.end()) throw CorruptionError(line, fmt::format("line {}: missing field '{}'", line, key));
    if (!it->is_number_unsigned()) {
        throw CorruptionError(line, fmt::format("line {}: field '{}' must be a non-negative integer", line, key));
    }
    return it->get<std::size_t>();
}

double get_number(const json& obj, const char* key, std::size_t line)
{
    const auto it = obj.find(key);
    if (it == obj.end()) throw CorruptionError(line, fmt::format("line {}: missing field '{}'", line, key));
    if (!it->is_number()) throw CorruptionError(line, fmt::format("line {}: field '{}' must be a number", line, key));
    return it->get<double>();
}

std::string get_string(const json& obj, const char* key, std::size_t line)
{
    const auto it = obj.find(key);
    if (it == obj.end()) throw CorruptionError(line, fmt::format("line {}: missing field '{}'", line, key));
    if (!it->is_string()) throw CorruptionError(line, fmt::format("line {}: field '{}' must be a string", line, key));
    return it->get<std::string>();
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), fmt::format("cannot open store '{}': {}", path.string(), std::strerror(errno)));
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError(path.string(), fmt::format("cannot read store '{}'", path.string()));
    return data;
}

void validate_snapshot(const QualitySnapshot& s)
{
    if (s.project_id.empty()) throw InvalidArgumentError("snapshot project id must not be empty");
    if (!std::isfinite(s.t_hours) || s.t_hours < 0) {
        throw InvalidArgumentError(fmt::format("snapshot time must be a finite number of hours >= 0, got {}", s.t_hours));
    }
    const auto& st = s.stats;
    if (st.comment_lines > st.total_lines || st.blank_lines + st.comment_lines > st.total_lines ||
        st.loc != st.total_lines - st.comment_lines) {
        throw InvalidArgumentError("snapshot line counts are inconsistent");
    }
    if (!(s.metrics == compute_metrics(s.error_count, st.loc))) {
        throw InvalidArgumentError("snapshot metrics do not match its error count and loc");
    }
}

} // namespace

std::string format_rfc3339(WallClock t)
{
    const auto day = floor<days>(t);
    const year_month_day ymd{day};
    const hh_mm_ss<seconds> hms{t - day};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
                       hms.minutes().count(), hms.seconds().count());
}

WallClock parse_rfc3339(std::string_view text)
{
    const auto fail = [&] { return InvalidArgumentError(fmt::format("not an RFC 3339 timestamp: '{}'", text)); };
    int y = 0;
    unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (text.size() < 20 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != 't') ||
        text[13] != ':' || text[16] != ':') {
        throw fail();
    }
    if (!parse_fixed(text, 0, 4, y) || !parse_fixed(text, 5, 2, mo) || !parse_fixed(text, 8, 2, d) ||
        !parse_fixed(text, 11, 2, h) || !parse_fixed(text, 14, 2, mi) || !parse_fixed(text, 17, 2, s)) {
        throw fail();
    }
    std::size_t pos = 19;
    if (text[pos] == '.') {
        ++pos;
        const std::size_t digits_begin = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == digits_begin) throw fail();
    }
    if (pos >= text.size()) throw fail();
    minutes offset{0};
    if (text[pos] == 'Z' || text[pos] == 'z') {
        ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
        unsigned oh = 0, om = 0;
        if (text.size() != pos + 6 || text[pos + 3] != ':' || !parse_fixed(text, pos + 1, 2, oh) ||
            !parse_fixed(text, pos + 4, 2, om) || oh > 23 || om > 59) {
            throw fail();
        }
        offset = hours{oh} + minutes{om};
        if (text[pos] == '-') offset = -offset;
        pos += 6;
    } else {
        throw fail();
    }
    if (pos != text.size()) throw fail();
    const year_month_day ymd{year{y}, month{mo}, day{d}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 60) throw fail();
    // A leap second (:60) is folded into the following second.
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} - offset;
}

QualitySnapshot make_snapshot(std::string project_id, double t_hours, WallClock wall_clock, SourceStats stats,
                              std::size_t error_count)
{
    if (!std::isfinite(t_hours) || t_hours < 0) {
        throw InvalidArgumentError(fmt::format("snapshot time must be a finite number of hours >= 0, got {}", t_hours));
    }
    if (project_id.empty()) throw InvalidArgumentError("snapshot project id must not be empty");
    QualitySnapshot s;
    s.project_id = std::move(project_id);
    s.t_hours = t_hours;
    s.wall_clock = wall_clock;
    s.stats = std::move(stats);
    s.stats.unterminated_block_comment = false; // scan-time warning, not persisted
    s.error_count = error_count;
    s.metrics = compute_metrics(error_count, s.stats.loc);
    return s;
}

Trajectory::Trajectory(std::string project_id, std::vector<QualitySnapshot> snapshots)
    : project_id_(std::move(project_id)), snapshots_(std::move(snapshots))
{
    for (std::size_t i = 0; i < snapshots_.size(); ++i) {
        if (snapshots_[i].project_id != project_id_) {
            throw InvalidArgumentError(fmt::format("snapshot {} belongs to project '{}', expected '{}'", i,
                                                   snapshots_[i].project_id, project_id_));
        }
        if (i > 0 && !(snapshots_[i - 1].t_hours < snapshots_[i].t_hours)) {
            throw InvalidArgumentError(fmt::format("snapshot times must strictly increase: t={} follows t={}",
                                                   snapshots_[i].t_hours, snapshots_[i - 1].t_hours));
        }
    }
}

std::string encode_record(const QualitySnapshot& s)
{
    // Assembled by hand to fix the field order and the number formats.
    return fmt::format(R"({{"project":{},"wall_clock":"{}","t_hours":{},"file":{},"total_lines":{},)"
                       R"("comment_lines":{},"blank_lines":{},"loc":{},"for_count":{},"while_count":{},)"
                       R"("errors":{},"el_percent":{},"x":{}}})",
                       json(s.project_id).dump(), format_rfc3339(s.wall_clock), display::round_trip(s.t_hours),
                       json(s.stats.file_name).dump(), s.stats.total_lines, s.stats.comment_lines,
                       s.stats.blank_lines, s.stats.loc, s.stats.for_count, s.stats.while_count, s.error_count,
                       display::full_precision(s.metrics.error_level_percent),
                       display::full_precision(s.metrics.degree_of_excellence));
}

QualitySnapshot decode_record(std::string_view text, std::size_t line)
{
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CorruptionError(line, fmt::format("line {}: malformed record: {}", line, e.what()));
    }
    if (!obj.is_object()) throw CorruptionError(line, fmt::format("line {}: record is not a JSON object", line));

    QualitySnapshot s;
    s.project_id = get_string(obj, "project", line);
    try {
        s.wall_clock = parse_rfc3339(get_string(obj, "wall_clock", line));
    } catch (const InvalidArgumentError& e) {
        throw CorruptionError(line, fmt::format("line {}: {}", line, e.what()));
    }
    s.t_hours = get_number(obj, "t_hours", line);
    s.stats.file_name = get_string(obj, "file", line);
    s.stats.total_lines = get_count(obj, "total_lines", line);
    s.stats.comment_lines = get_count(obj, "comment_lines", line);
    s.stats.blank_lines = get_count(obj, "blank_lines", line);
    s.stats.loc = get_count(obj, "loc", line);
    s.stats.for_count = get_count(obj, "for_count", line);
    s.stats.while_count = get_count(obj, "while_count", line);
    s.error_count = get_count(obj, "errors", line);
    const double el_percent = get_number(obj, "el_percent", line);
    const double x = get_number(obj, "x", line);

    if (s.project_id.empty()) throw CorruptionError(line, fmt::format("line {}: empty project id", line));
    if (!std::isfinite(s.t_hours) || s.t_hours < 0) {
        throw CorruptionError(line, fmt::format("line {}: t_hours must be >= 0", line));
    }
    const auto& st = s.stats;
    if (st.comment_lines > st.total_lines || st.blank_lines + st.comment_lines > st.total_lines ||
        st.loc != st.total_lines - st.comment_lines) {
        throw CorruptionError(line, fmt::format("line {}: inconsistent line counts", line));
    }
    try {
        s.metrics = compute_metrics(s.error_count, st.loc);
    } catch (const UndefinedMetricError&) {
        throw CorruptionError(line, fmt::format("line {}: loc is 0", line));
    }
    if (s.metrics.error_level_percent != el_percent || s.metrics.degree_of_excellence != x) {
        throw CorruptionError(line, fmt::format("line {}: stored metrics do not match errors={} loc={}", line,
                                                s.error_count, st.loc));
    }
    return s;
}

std::vector<QualitySnapshot> load_store(const std::filesystem::path& store_path)
{
    std::error_code ec;
    if (!std::filesystem::exists(store_path, ec)) return {};
    const std::string data = read_file(store_path);

    std::vector<QualitySnapshot> records;
    std::map<std::string, double, std::less<>> last_time;
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin < data.size()) {
        std::size_t end = data.find('\n', begin);
        if (end == std::string::npos) end = data.size();
        std::string_view line(data.data() + begin, end - begin);
        ++line_no;
        begin = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        QualitySnapshot s = decode_record(line, line_no);
        auto [it, inserted] = last_time.try_emplace(s.project_id, s.t_hours);
        if (!inserted) {
            if (!(it->second < s.t_hours)) {
                throw CorruptionError(line_no, fmt::format("line {}: t_hours {} does not follow {} for project '{}'",
                                                           line_no, s.t_hours, it->second, s.project_id));
            }
            it->second = s.t_hours;
        }
        records.push_back(std::move(s));
    }
    return records;
}

void append_snapshot(const std::filesystem::path& store_path, const QualitySnapshot& snapshot)
{
    validate_snapshot(snapshot);

    const auto existing = load_store(store_path);
    for (auto it = existing.rbegin(); it != existing.rend(); ++it) {
        if (it->project_id != snapshot.project_id) continue;
        if (!(it->t_hours < snapshot.t_hours)) {
            throw OrderingError(fmt::format("snapshot at t={} h does not follow the last stored t={} h for project '{}'",
                                            snapshot.t_hours, it->t_hours, snapshot.project_id));
        }
        break;
    }

    std::string record = encode_record(snapshot);
    record.push_back('\n');

    const std::string path = store_path.string();
    const int fd = ::open(path.c_str(), O_RDWR | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) throw IoError(path, fmt::format("cannot open store '{}': {}", path, std::strerror(errno)));

    // A complete final record without its newline must not be glued to ours.
    struct stat st{};
    if (::fstat(fd, &st) == 0 && st.st_size > 0) {
        char last = '\n';
        if (::pread(fd, &last, 1, st.st_size - 1) == 1 && last != '\n') record.insert(record.begin(), '\n');
    }

    const char* p = record.data();
    std::size_t left = record.size();
    while (left > 0) {
        const ssize_t n = ::write(fd, p, left);
        if (n < 0) {
            if (errno == EINTR) continue;
            const int err = errno;
            ::close(fd);
            throw IoError(path, fmt::format("cannot write store '{}': {}", path, std::strerror(err)));
        }
        p += n;
        left -= static_cast<std::size_t>(n);
    }
    const bool synced = ::fsync(fd) == 0;
    ::close(fd);
    if (!synced) throw IoError(path, fmt::format("cannot sync store '{}'", path));
}

Trajectory load_trajectory(const std::filesystem::path& store_path, std::string_view project_id)
{
    std::vector<QualitySnapshot> mine;
    for (auto& s : load_store(store_path)) {
        if (s.project_id == project_id) mine.push_back(std::move(s));
    }
    return Trajectory(std::string(project_id), std::move(mine));
}

} // namespace excel
