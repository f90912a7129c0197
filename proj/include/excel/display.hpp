#pragma once

#include <string>

namespace excel::display {

/// Fixed-point rendering with half-away-from-zero rounding to `decimals`
/// places (0.8475 -> "0.85", -0.125 -> "-0.13"). Negative zero prints as "0.00".
std::string fixed(double value, int decimals = 2);

/// Shortest text that parses back to exactly `value`; always contains a
/// '.' or an exponent so it reads as a decimal.
std::string round_trip(double value);

/// `value` with 17 significant digits.
std::string full_precision(double value);

} // namespace excel::display
