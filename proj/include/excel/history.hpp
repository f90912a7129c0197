//===----------------------------------------------------------------------===//
//
// Append-only snapshot store.
//
// One JSON object per line, fields in this order:
//   project, wall_clock, t_hours, file, total_lines, comment_lines,
//   blank_lines, loc, for_count, while_count, errors, el_percent, x
// wall_clock is RFC 3339 UTC; el_percent and x carry 17 significant digits
// so stored metrics re-derive bit-exactly from the stored counts.
//
// Single writer per store file. Each record is written with one write(2)
// call followed by fsync, so a crash can only lose or truncate the final
// record.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "excel/metrics.hpp"
#include "excel/scanner.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace excel {

using WallClock = std::chrono::sys_seconds;

std::string format_rfc3339(WallClock t);
/// Accepts `YYYY-MM-DDTHH:MM:SS` followed by `Z` or `+hh:mm`/`-hh:mm`;
/// fractional seconds are truncated. Throws InvalidArgumentError.
WallClock parse_rfc3339(std::string_view text);

struct QualitySnapshot
{
    std::string project_id;
    double t_hours = 0.0; ///< hours since the project's first snapshot
    WallClock wall_clock{};
    SourceStats stats;
    std::size_t error_count = 0;
    QualityMetrics metrics;

    friend bool operator==(const QualitySnapshot&, const QualitySnapshot&) = default;
};

/// Builds a snapshot whose metrics are compute_metrics(error_count, stats.loc).
QualitySnapshot make_snapshot(std::string project_id, double t_hours, WallClock wall_clock, SourceStats stats,
                              std::size_t error_count);

/// Snapshots of one project, strictly increasing in t_hours.
class Trajectory
{
  public:
    Trajectory() = default;
    /// Throws InvalidArgumentError if the snapshots are unordered or mixed.
    Trajectory(std::string project_id, std::vector<QualitySnapshot> snapshots);

    const std::string& project_id() const noexcept { return project_id_; }
    const std::vector<QualitySnapshot>& snapshots() const noexcept { return snapshots_; }
    std::size_t size() const noexcept { return snapshots_.size(); }
    bool empty() const noexcept { return snapshots_.empty(); }
    const QualitySnapshot& operator[](std::size_t i) const { return snapshots_[i]; }
    const QualitySnapshot& front() const { return snapshots_.front(); }
    const QualitySnapshot& back() const { return snapshots_.back(); }

  private:
    std::string project_id_;
    std::vector<QualitySnapshot> snapshots_;
};

/// Serialized form of one snapshot, without the trailing newline.
std::string encode_record(const QualitySnapshot& s);
/// Parses and integrity-checks one record; `line` is used in CorruptionError.
QualitySnapshot decode_record(std::string_view text, std::size_t line);

/// Every record in the store, in file order. A missing file is an empty
/// store. Throws CorruptionError (1-based line) on a malformed record, a
/// metrics mismatch, or a per-project timestamp regression.
std::vector<QualitySnapshot> load_store(const std::filesystem::path& store_path);

/// Throws OrderingError unless snapshot.t_hours exceeds the last stored
/// t_hours of the same project.
void append_snapshot(const std::filesystem::path& store_path, const QualitySnapshot& snapshot);

/// The project's snapshots in timestamp order; unknown project -> empty.
Trajectory load_trajectory(const std::filesystem::path& store_path, std::string_view project_id);

} // namespace excel
