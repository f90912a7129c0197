#include "excel/metrics.hpp"

#include "excel/errors.hpp"

#include <fmt/format.h>

namespace excel {

QualityMetrics compute_metrics(std::size_t error_count, std::size_t loc)
{
    if (loc == 0) {
        throw UndefinedMetricError(fmt::format("error level undefined: {} error(s) over 0 lines of code", error_count));
    }
    QualityMetrics m;
    m.error_level_fraction = static_cast<double>(error_count) / static_cast<double>(loc);
    m.error_level_percent = 100.0 * m.error_level_fraction;
    m.degree_of_excellence = 100.0 - m.error_level_percent;
    return m;
}

const char* to_string(Faultiness f) noexcept
{
    return f == Faultiness::Faulty ? "Faulty" : "NonFaulty";
}

} // namespace excel
