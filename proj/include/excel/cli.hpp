// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with in-memory streams, an injected store default and
// an injected clock.
#pragma once

#include "excel/history.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace excel::cli {

/// Process exit codes. Stable; success is exactly 0.
enum ExitCode : int
{
    kOk = 0,
    kUsage = 1,
    kIoError = 2,
    kScanError = 3,
    kPatternError = 4,
    kUndefinedMetric = 5,
    kOrderingError = 6,
    kStoreCorrupt = 7,
    kInsufficientData = 8,
    kInvalidArgument = 9,
};

struct Context
{
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    /// Value of EXCEL_STORE, if set.
    std::optional<std::string> default_store;
    std::function<WallClock()> now;
};

/// Current time truncated to seconds.
WallClock system_now();

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, Context& ctx);

} // namespace excel::cli
