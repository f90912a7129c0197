#include "excel/display.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdint>

namespace excel::display {

std::string fixed(double value, int decimals)
{
    if (!std::isfinite(value)) return fmt::format("{}", value);
    const double scale = std::pow(10.0, decimals);
    const double scaled = std::round(std::fabs(value) * scale); // std::round is half-away-from-zero
    if (scaled >= 9.0e15) {
        return fmt::format("{:.{}f}", value, decimals);
    }
    const auto units = static_cast<std::uint64_t>(scaled);
    const auto pow10 = static_cast<std::uint64_t>(scale);
    const bool negative = value < 0 && units != 0;
    if (decimals == 0) return fmt::format("{}{}", negative ? "-" : "", units);
    return fmt::format("{}{}.{:0{}}", negative ? "-" : "", units / pow10, units % pow10, decimals);
}

std::string round_trip(double value)
{
    std::string s = fmt::format("{}", value);
    if (std::isfinite(value) && s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string full_precision(double value)
{
    return fmt::format("{:.17g}", value);
}

} // namespace excel::display
