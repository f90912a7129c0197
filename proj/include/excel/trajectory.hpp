//===----------------------------------------------------------------------===//
//
// Rates of change of Degree of Excellence over time.
//
// Time is decimal hours; rates are percentage points of X per hour.
// - secant_rate: average rate between two stored snapshots, no interpolation.
// - instantaneous_rate: three-point non-uniform central difference at an
//   interior snapshot, one-sided difference at either end, and the slope of
//   the bracketing interval between snapshots.
// - fit_polynomial: least-squares X(t) of degree 1..3 over t - t_first;
//   fit_rate differentiates it.
// - effort: alpha * rate.
// - classify_trend: shape of the consecutive secant slopes.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "excel/history.hpp"

#include <cstddef>
#include <vector>

namespace excel {

enum class RateMethod
{
    Secant,
    CentralDifference,
    FitDerivative,
};

const char* to_string(RateMethod m) noexcept;

struct RateEstimate
{
    double value = 0.0; ///< points per hour
    RateMethod method = RateMethod::Secant;
    double t_start = 0.0;
    double t_end = 0.0;
};

struct EffortEstimate
{
    double alpha = 1.0;
    RateEstimate rate;
    double effort = 0.0; ///< alpha * rate.value
};

enum class TrendClass
{
    Uniform,
    Positive,
    Negative,
    Mixed,
};

const char* to_string(TrendClass t) noexcept;

/// Least-squares polynomial X(t).
struct PolyFit
{
    int degree = 1;
    /// Coefficients in absolute hours, constant term first.
    std::vector<double> coefficients;
    double residual_sum_of_squares = 0.0;
    /// Fitting origin; local_coefficients are in powers of (t - origin).
    double origin = 0.0;
    std::vector<double> local_coefficients;

    double value_at(double t) const noexcept;
    double derivative_at(double t) const noexcept;
};

inline constexpr double kDefaultTrendTolerance = 1e-6;
inline constexpr double kDefaultAlpha = 1.0;

/// t_i and t_f must be stored timestamps (exact match). Throws IntervalError
/// when t_i >= t_f and NotFoundError listing the stored times otherwise.
RateEstimate secant_rate(const Trajectory& traj, double t_i, double t_f);

/// Slopes between each pair of consecutive snapshots.
std::vector<RateEstimate> interval_rates(const Trajectory& traj);

/// Throws InsufficientDataError with < 2 snapshots, ExtrapolationError when
/// t lies outside [first, last].
RateEstimate instantaneous_rate(const Trajectory& traj, double t);

/// degree in {1, 2, 3}; needs at least degree + 1 snapshots.
PolyFit fit_polynomial(const Trajectory& traj, int degree);

/// Derivative of `fit` at t, tagged FitDerivative over the fitted range.
RateEstimate fit_rate(const PolyFit& fit, const Trajectory& traj, double t);

/// Throws InvalidArgumentError when alpha <= 0 or is not finite.
EffortEstimate effort(double alpha, const RateEstimate& rate);

/// Uniform: every slope within tolerance of the mean and mean > tolerance.
/// Positive: every slope > tolerance. Negative: every slope < -tolerance.
/// Mixed otherwise.
TrendClass classify_trend(const Trajectory& traj, double tolerance = kDefaultTrendTolerance);

/// classify_trend on precomputed slopes; exposed for fixtures given as slopes.
TrendClass classify_slopes(const std::vector<double>& slopes, double tolerance = kDefaultTrendTolerance);

} // namespace excel
