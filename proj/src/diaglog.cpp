#include "excel/diaglog.hpp"

#include "excel/errors.hpp"

#include <boost/regex.hpp>
#include <fmt/format.h>

#include <algorithm>

namespace excel {

struct ErrorPattern::Compiled
{
    boost::regex re;
};

ErrorPattern::ErrorPattern() : ErrorPattern(std::string(kDefaultErrorPattern), false) {}

ErrorPattern::ErrorPattern(std::string pattern_text, bool case_sensitive)
    : text_(std::move(pattern_text)), case_sensitive_(case_sensitive)
{
    boost::regex::flag_type flags = boost::regex::perl;
    if (!case_sensitive_) flags |= boost::regex::icase;
    try {
        compiled_ = std::make_shared<const Compiled>(Compiled{boost::regex(text_, flags)});
    } catch (const boost::regex_error& e) {
        const auto pos = static_cast<std::size_t>(std::max<std::ptrdiff_t>(e.position(), 0));
        throw PatternError(pos, fmt::format("invalid error pattern '{}' at position {}: {}", text_, pos,
                                            boost::regex_traits<char>().error_string(e.code())));
    }
}

bool ErrorPattern::matches(std::string_view line) const
{
    return boost::regex_search(line.begin(), line.end(), compiled_->re);
}

ErrorReport count_errors(std::string_view log_text, const ErrorPattern& pattern, std::string log_name)
{
    ErrorReport report;
    report.log_name = std::move(log_name);
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin < log_text.size()) {
        std::size_t end = log_text.find('\n', begin);
        if (end == std::string_view::npos) end = log_text.size();
        auto line = log_text.substr(begin, end - begin);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (pattern.matches(line)) report.matched_line_numbers.push_back(line_no);
        begin = end + 1;
    }
    report.error_count = report.matched_line_numbers.size();
    return report;
}

} // namespace excel
