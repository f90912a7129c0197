#include "excel/scanner.hpp"

#include "excel/errors.hpp"

#include <fmt/format.h>

namespace excel {

const char* to_string(LineClass c) noexcept
{
    switch (c) {
    case LineClass::Code: return "Code";
    case LineClass::Comment: return "Comment";
    case LineClass::Blank: return "Blank";
    }
    return "?";
}

void validate_utf8(std::string_view text)
{
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char lead = p[i];
        if (lead < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        unsigned char lo = 0x80, hi = 0xBF; // allowed range of the first continuation byte
        if (lead >= 0xC2 && lead <= 0xDF) {
            len = 2;
        } else if (lead >= 0xE0 && lead <= 0xEF) {
            len = 3;
            if (lead == 0xE0) lo = 0xA0;      // overlong
            else if (lead == 0xED) hi = 0x9F; // surrogates
        } else if (lead >= 0xF0 && lead <= 0xF4) {
            len = 4;
            if (lead == 0xF0) lo = 0x90;
            else if (lead == 0xF4) hi = 0x8F; // > U+10FFFF
        } else {
            throw EncodingError(i, fmt::format("invalid UTF-8 lead byte 0x{:02X} at byte offset {}", lead, i));
        }
        for (std::size_t k = 1; k < len; ++k) {
            if (i + k >= n) {
                throw EncodingError(i, fmt::format("truncated UTF-8 sequence at byte offset {}", i));
            }
            const unsigned char b = p[i + k];
            const unsigned char min = (k == 1) ? lo : 0x80;
            const unsigned char max = (k == 1) ? hi : 0xBF;
            if (b < min || b > max) {
                throw EncodingError(i, fmt::format("invalid UTF-8 sequence at byte offset {} (byte 0x{:02X})", i, b));
            }
        }
        i += len;
    }
}

namespace {

enum class State
{
    Normal,
    LineComment,
    BlockComment,
    StringLiteral,
    CharLiteral,
};

bool is_ident_char(char c) noexcept
{
    const auto u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9') || u == '_' || u >= 0x80;
}

bool is_space(char c) noexcept
{
    return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r';
}

class LineScanner
{
  public:
    explicit LineScanner(std::string_view text) : text_(text) {}

    void run()
    {
        begin_line();
        const std::size_t n = text_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const char c = text_[i];
            if (c == '\n') {
                flush_ident(i);
                end_line();
                continue;
            }
            if (c == '\r' && i + 1 < n && text_[i + 1] == '\n') {
                flush_ident(i); // CR of a CRLF terminator
                continue;
            }
            switch (state_) {
            case State::Normal: i = step_normal(i); break;
            case State::LineComment: break;
            case State::BlockComment:
                if (c == '*' && i + 1 < n && text_[i + 1] == '/') {
                    state_ = State::Normal;
                    ++i;
                }
                break;
            case State::StringLiteral: step_literal(c, '"'); break;
            case State::CharLiteral: step_literal(c, '\''); break;
            }
        }
        flush_ident(n);
        if (!text_.empty() && text_.back() != '\n') {
            end_line();
        }
        unterminated_ = state_ == State::BlockComment;
    }

    const std::vector<LineClass>& lines() const noexcept { return lines_; }
    std::size_t for_count() const noexcept { return for_count_; }
    std::size_t while_count() const noexcept { return while_count_; }
    bool unterminated_block_comment() const noexcept { return unterminated_; }

  private:
    std::size_t step_normal(std::size_t i)
    {
        const char c = text_[i];
        if (is_ident_char(c)) {
            if (ident_begin_ == npos) ident_begin_ = i;
            has_code_ = true;
            return i;
        }
        flush_ident(i);
        if (is_space(c)) return i;
        const char next = i + 1 < text_.size() ? text_[i + 1] : '\0';
        if (c == '/' && next == '/') {
            state_ = State::LineComment;
            has_comment_ = true;
            return i + 1;
        }
        if (c == '/' && next == '*') {
            state_ = State::BlockComment;
            has_comment_ = true;
            return i + 1;
        }
        if (c == '"') state_ = State::StringLiteral;
        else if (c == '\'') state_ = State::CharLiteral;
        has_code_ = true;
        return i;
    }

    void step_literal(char c, char quote)
    {
        if (escape_) {
            escape_ = false;
        } else if (c == '\\') {
            escape_ = true;
        } else if (c == quote) {
            state_ = State::Normal;
        }
    }

    void flush_ident(std::size_t end)
    {
        if (ident_begin_ == npos) return;
        const auto word = text_.substr(ident_begin_, end - ident_begin_);
        if (word == "for") ++for_count_;
        else if (word == "while") ++while_count_;
        ident_begin_ = npos;
    }

    void begin_line()
    {
        has_code_ = state_ == State::StringLiteral || state_ == State::CharLiteral;
        has_comment_ = state_ == State::BlockComment;
    }

    void end_line()
    {
        if (has_code_) lines_.push_back(LineClass::Code);
        else if (has_comment_) lines_.push_back(LineClass::Comment);
        else lines_.push_back(LineClass::Blank);

        if (state_ == State::LineComment) {
            state_ = State::Normal;
        } else if (state_ == State::StringLiteral || state_ == State::CharLiteral) {
            if (escape_) escape_ = false; // backslash-newline continues the literal
            else state_ = State::Normal;
        }
        begin_line();
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::string_view text_;
    State state_ = State::Normal;
    bool escape_ = false;
    bool has_code_ = false;
    bool has_comment_ = false;
    bool unterminated_ = false;
    std::size_t ident_begin_ = npos;
    std::size_t for_count_ = 0;
    std::size_t while_count_ = 0;
    std::vector<LineClass> lines_;
};

} // namespace

SourceStats scan_source(std::string_view source_text, std::string file_name)
{
    validate_utf8(source_text);
    LineScanner scanner(source_text);
    scanner.run();

    SourceStats stats;
    stats.file_name = std::move(file_name);
    stats.total_lines = scanner.lines().size();
    for (const LineClass c : scanner.lines()) {
        if (c == LineClass::Comment) ++stats.comment_lines;
        else if (c == LineClass::Blank) ++stats.blank_lines;
    }
    stats.loc = stats.total_lines - stats.comment_lines;
    stats.for_count = scanner.for_count();
    stats.while_count = scanner.while_count();
    stats.unterminated_block_comment = scanner.unterminated_block_comment();
    return stats;
}

std::vector<LineClass> classify_lines(std::string_view source_text)
{
    validate_utf8(source_text);
    LineScanner scanner(source_text);
    scanner.run();
    return scanner.lines();
}

} // namespace excel
