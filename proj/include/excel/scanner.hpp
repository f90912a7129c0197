//===----------------------------------------------------------------------===//
//
// Comment-aware line census for C-like source files.
//
// Every physical line is classified as Code, Comment or Blank by a single
// pass state machine (Normal, LineComment, BlockComment, StringLiteral,
// CharLiteral). The same pass counts `for` and `while` keywords that occur
// as whole identifiers outside comments and literals.
//
// Line rules:
// - Lines end at LF; a CR directly before the LF is part of the terminator.
//   A final line without a newline still counts.
// - A line is Comment when it has no code and either touches a comment or
//   starts inside a block comment (so blank lines inside /* */ are Comment).
// - A line is Blank when it is whitespace only and not Comment.
// - Everything else is Code, including lines with trailing comments and
//   preprocessor directives.
// - LOC is total_lines - comment_lines, so blank lines count toward LOC.
//
// Literal rules:
// - Backslash escapes the next character inside string and char literals;
//   an escaped newline continues the literal onto the next line.
// - An unescaped newline terminates an unclosed literal.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace excel {

enum class LineClass
{
    Code,
    Comment,
    Blank,
};

const char* to_string(LineClass c) noexcept;

struct SourceStats
{
    std::string file_name;
    std::size_t total_lines = 0;
    std::size_t comment_lines = 0;
    std::size_t blank_lines = 0;
    std::size_t loc = 0;
    std::size_t for_count = 0;
    std::size_t while_count = 0;
    /// Set when the input ends inside a /* comment. The trailing lines are
    /// counted as Comment and the scan still succeeds.
    bool unterminated_block_comment = false;

    friend bool operator==(const SourceStats&, const SourceStats&) = default;
};

/// Throws EncodingError at the first byte that is not valid UTF-8.
void validate_utf8(std::string_view text);

/// Census of `source_text`. Throws EncodingError on invalid UTF-8.
SourceStats scan_source(std::string_view source_text, std::string file_name);

/// One LineClass per physical line, same state machine as scan_source.
std::vector<LineClass> classify_lines(std::string_view source_text);

} // namespace excel
