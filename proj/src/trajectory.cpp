#include "excel/trajectory.hpp"

#include "excel/errors.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>

namespace excel {

const char* to_string(RateMethod m) noexcept
{
    switch (m) {
    case RateMethod::Secant: return "Secant";
    case RateMethod::CentralDifference: return "CentralDifference";
    case RateMethod::FitDerivative: return "FitDerivative";
    }
    return "?";
}

const char* to_string(TrendClass t) noexcept
{
    switch (t) {
    case TrendClass::Uniform: return "Uniform";
    case TrendClass::Positive: return "Positive";
    case TrendClass::Negative: return "Negative";
    case TrendClass::Mixed: return "Mixed";
    }
    return "?";
}

namespace {

double slope(const QualitySnapshot& a, const QualitySnapshot& b)
{
    return (b.metrics.degree_of_excellence - a.metrics.degree_of_excellence) / (b.t_hours - a.t_hours);
}

std::vector<double> stored_times(const Trajectory& traj)
{
    std::vector<double> times;
    times.reserve(traj.size());
    for (const auto& s : traj.snapshots()) times.push_back(s.t_hours);
    return times;
}

std::size_t index_of(const Trajectory& traj, double t)
{
    const auto& snaps = traj.snapshots();
    const auto it = std::lower_bound(snaps.begin(), snaps.end(), t,
                                     [](const QualitySnapshot& s, double v) { return s.t_hours < v; });
    if (it == snaps.end() || it->t_hours != t) {
        throw NotFoundError(fmt::format("no snapshot of project '{}' at t={} h; stored times: [{}]",
                                        traj.project_id(), t, fmt::join(stored_times(traj), ", ")));
    }
    return static_cast<std::size_t>(it - snaps.begin());
}

void require_two(const Trajectory& traj)
{
    if (traj.size() < 2) {
        throw InsufficientDataError(fmt::format("project '{}' has {} snapshot(s); at least 2 are needed for a rate",
                                                traj.project_id(), traj.size()));
    }
}

double evaluate(const std::vector<double>& c, double u) noexcept
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
}

} // namespace

double PolyFit::value_at(double t) const noexcept
{
    return evaluate(local_coefficients, t - origin);
}

double PolyFit::derivative_at(double t) const noexcept
{
    const double u = t - origin;
    double acc = 0.0;
    for (std::size_t k = local_coefficients.size(); k-- > 1;) acc = acc * u + static_cast<double>(k) * local_coefficients[k];
    return acc;
}

RateEstimate secant_rate(const Trajectory& traj, double t_i, double t_f)
{
    if (!(t_i < t_f)) throw IntervalError(fmt::format("secant interval needs t_i < t_f, got [{}, {}]", t_i, t_f));
    const auto& a = traj[index_of(traj, t_i)];
    const auto& b = traj[index_of(traj, t_f)];
    return RateEstimate{slope(a, b), RateMethod::Secant, t_i, t_f};
}

std::vector<RateEstimate> interval_rates(const Trajectory& traj)
{
    std::vector<RateEstimate> out;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        out.push_back(RateEstimate{slope(traj[i - 1], traj[i]), RateMethod::Secant, traj[i - 1].t_hours, traj[i].t_hours});
    }
    return out;
}

RateEstimate instantaneous_rate(const Trajectory& traj, double t)
{
    require_two(traj);
    const double first = traj.front().t_hours;
    const double last = traj.back().t_hours;
    if (!(t >= first && t <= last)) {
        throw ExtrapolationError(fmt::format("t={} h lies outside the sampled range [{}, {}]; extrapolation refused", t, first, last));
    }
    const auto& snaps = traj.snapshots();
    const auto it = std::lower_bound(snaps.begin(), snaps.end(), t,
                                     [](const QualitySnapshot& s, double v) { return s.t_hours < v; });
    const auto k = static_cast<std::size_t>(it - snaps.begin());
    const auto rate = [](double v, double lo, double hi) { return RateEstimate{v, RateMethod::CentralDifference, lo, hi}; };

    if (it->t_hours != t) {
        // Between samples: slope of the bracketing interval.
        return rate(slope(snaps[k - 1], snaps[k]), snaps[k - 1].t_hours, snaps[k].t_hours);
    }
    if (k == 0) return rate(slope(snaps[0], snaps[1]), snaps[0].t_hours, snaps[1].t_hours);
    if (k + 1 == snaps.size()) return rate(slope(snaps[k - 1], snaps[k]), snaps[k - 1].t_hours, snaps[k].t_hours);

    // Three-point non-uniform stencil, exact for quadratics: the neighbouring
    // slopes weighted by the opposite step.
    const double h1 = snaps[k].t_hours - snaps[k - 1].t_hours;
    const double h2 = snaps[k + 1].t_hours - snaps[k].t_hours;
    const double s1 = slope(snaps[k - 1], snaps[k]);
    const double s2 = slope(snaps[k], snaps[k + 1]);
    return rate((h2 * s1 + h1 * s2) / (h1 + h2), snaps[k - 1].t_hours, snaps[k + 1].t_hours);
}

PolyFit fit_polynomial(const Trajectory& traj, int degree)
{
    if (degree < 1 || degree > 3) throw InvalidArgumentError(fmt::format("fit degree must be 1, 2 or 3, got {}", degree));
    const auto n = traj.size();
    const auto terms = static_cast<std::size_t>(degree) + 1;
    if (n < terms) {
        throw InsufficientDataError(fmt::format("a degree-{} fit needs at least {} snapshots; project '{}' has {}", degree,
                                                terms, traj.project_id(), n));
    }

    // Normal equations in v = (t - origin) / span, so the Gram matrix stays
    // well conditioned for any time range.
    const double origin = traj.front().t_hours;
    const double span = n > 1 ? traj.back().t_hours - origin : 1.0;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(terms), static_cast<Eigen::Index>(terms));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(terms));
    std::vector<double> powers(2 * terms - 1);
    for (const auto& s : traj.snapshots()) {
        const double v = (s.t_hours - origin) / span;
        powers[0] = 1.0;
        for (std::size_t p = 1; p < powers.size(); ++p) powers[p] = powers[p - 1] * v;
        for (std::size_t r = 0; r < terms; ++r) {
            rhs(static_cast<Eigen::Index>(r)) += powers[r] * s.metrics.degree_of_excellence;
            for (std::size_t c = 0; c < terms; ++c) gram(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += powers[r + c];
        }
    }
    const Eigen::VectorXd scaled = gram.ldlt().solve(rhs);

    PolyFit fit;
    fit.degree = degree;
    fit.origin = origin;
    fit.local_coefficients.resize(terms);
    for (std::size_t k = 0; k < terms; ++k) {
        fit.local_coefficients[k] = scaled(static_cast<Eigen::Index>(k)) / std::pow(span, static_cast<double>(k));
    }

    // Expand sum a_k (t - origin)^k into powers of t.
    fit.coefficients.assign(terms, 0.0);
    for (std::size_t k = 0; k < terms; ++k) {
        double binom = 1.0;
        for (std::size_t j = 0; j <= k; ++j) {
            if (j > 0) binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
            fit.coefficients[j] += fit.local_coefficients[k] * binom * std::pow(-origin, static_cast<double>(k - j));
        }
    }

    for (const auto& s : traj.snapshots()) {
        const double r = s.metrics.degree_of_excellence - fit.value_at(s.t_hours);
        fit.residual_sum_of_squares += r * r;
    }
    return fit;
}

RateEstimate fit_rate(const PolyFit& fit, const Trajectory& traj, double t)
{
    require_two(traj);
    const double first = traj.front().t_hours;
    const double last = traj.back().t_hours;
    if (!(t >= first && t <= last)) {
        throw ExtrapolationError(fmt::format("t={} h lies outside the fitted range [{}, {}]; extrapolation refused", t, first, last));
    }
    return RateEstimate{fit.derivative_at(t), RateMethod::FitDerivative, first, last};
}

EffortEstimate effort(double alpha, const RateEstimate& rate)
{
    if (!std::isfinite(alpha) || alpha <= 0) {
        throw InvalidArgumentError(fmt::format("developer-ability coefficient alpha must be > 0, got {}", alpha));
    }
    return EffortEstimate{alpha, rate, alpha * rate.value};
}

TrendClass classify_slopes(const std::vector<double>& slopes, double tolerance)
{
    if (slopes.empty()) throw InsufficientDataError("trend classification needs at least one interval (2 snapshots)");
    if (!(tolerance >= 0)) throw InvalidArgumentError(fmt::format("trend tolerance must be >= 0, got {}", tolerance));

    double mean = 0.0;
    for (const double s : slopes) mean += s;
    mean /= static_cast<double>(slopes.size());

    const auto all = [&](auto pred) { return std::all_of(slopes.begin(), slopes.end(), pred); };
    if (mean > tolerance && all([&](double s) { return std::fabs(s - mean) <= tolerance; })) return TrendClass::Uniform;
    if (all([&](double s) { return s > tolerance; })) return TrendClass::Positive;
    if (all([&](double s) { return s < -tolerance; })) return TrendClass::Negative;
    return TrendClass::Mixed;
}

TrendClass classify_trend(const Trajectory& traj, double tolerance)
{
    require_two(traj);
    std::vector<double> slopes;
    for (const auto& r : interval_rates(traj)) slopes.push_back(r.value);
    return classify_slopes(slopes, tolerance);
}

} // namespace excel
