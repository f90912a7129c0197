// Error counting over compiler diagnostic logs.
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace excel {

/// Matches `file:1:2: error: ...`, `fatal error: ...`, and MSVC-style
/// `file(3): error C2065: ...`. Warnings and notes do not match.
inline constexpr std::string_view kDefaultErrorPattern = R"(\berror\b(\s+[A-Za-z]*[0-9]+)?\s*:)";

/// A compiled line pattern. Construction throws PatternError with the byte
/// position where compilation failed.
class ErrorPattern
{
  public:
    ErrorPattern();
    explicit ErrorPattern(std::string pattern_text, bool case_sensitive = false);

    const std::string& pattern_text() const noexcept { return text_; }
    bool case_sensitive() const noexcept { return case_sensitive_; }

    /// True when the pattern matches anywhere in `line`.
    bool matches(std::string_view line) const;

  private:
    struct Compiled;
    std::string text_;
    bool case_sensitive_ = false;
    std::shared_ptr<const Compiled> compiled_;
};

struct ErrorReport
{
    std::string log_name;
    std::size_t error_count = 0;
    std::vector<std::size_t> matched_line_numbers; ///< 1-based, strictly increasing
};

/// Counts lines of `log_text` matching `pattern`; one matching line is one error.
ErrorReport count_errors(std::string_view log_text, const ErrorPattern& pattern, std::string log_name = {});

} // namespace excel
