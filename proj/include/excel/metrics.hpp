// Error Level, Degree of Excellence, Improvement and the faulty verdict.
#pragma once

#include <cstddef>

namespace excel {

struct QualityMetrics
{
    double error_level_fraction = 0.0; ///< errors / LOC
    double error_level_percent = 0.0;  ///< 100 * error_level_fraction
    /// 100 - error_level_percent. Not clamped: exceeds [0, 100] when errors > LOC.
    double degree_of_excellence = 100.0;

    friend bool operator==(const QualityMetrics&, const QualityMetrics&) = default;
};

/// Throws UndefinedMetricError when loc == 0.
QualityMetrics compute_metrics(std::size_t error_count, std::size_t loc);

/// Change in Degree of Excellence, in percentage points.
constexpr double improvement(double x_initial, double x_final) noexcept
{
    return x_final - x_initial;
}

enum class Faultiness
{
    Faulty,
    NonFaulty,
};

const char* to_string(Faultiness f) noexcept;

struct Verdict
{
    Faultiness value = Faultiness::NonFaulty;
    std::size_t threshold_used = 0;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Faulty iff error_count > threshold.
constexpr Verdict classify_module(std::size_t error_count, std::size_t threshold = 0) noexcept
{
    return Verdict{error_count > threshold ? Faultiness::Faulty : Faultiness::NonFaulty, threshold};
}

} // namespace excel
