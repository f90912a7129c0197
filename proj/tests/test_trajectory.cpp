#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excel/errors.hpp"
#include "excel/trajectory.hpp"
#include "support/synthetic.hpp"

#include <cmath>
#include <random>

using namespace excel;
using synthetic::grid;
using synthetic::sample;

namespace {

const auto linear = [](double t) { return 99.0 + 0.5 * t; };
const auto quadratic = [](double t) { return 90.0 + 3.0 * t - 0.2 * t * t; };
const auto quadratic_slope = [](double t) { return 3.0 - 0.4 * t; };

} // namespace

TEST_CASE("secant between the 17-error and error-free snapshots")
{
    // 17 errors over 2000 LOC gives X = 99.15; 0 errors gives 100.
    SourceStats st;
    st.total_lines = st.loc = 2000;
    const WallClock wc{};
    const Trajectory traj("p", {make_snapshot("p", 0.0, wc, st, 17), make_snapshot("p", 2.0, wc, st, 0)});
    const auto r = secant_rate(traj, 0.0, 2.0);
    CHECK(r.value == doctest::Approx(0.425).epsilon(1e-12));
    CHECK(r.method == RateMethod::Secant);
    CHECK(r.t_start == 0.0);
    CHECK(r.t_end == 2.0);
}

TEST_CASE("secant on constant and linear trajectories")
{
    const auto flat = sample({0, 1, 5}, [](double) { return 97.0; });
    CHECK(secant_rate(flat, 0, 5).value == 0.0);

    const auto traj = sample(grid(0.0, 0.7, 10), linear);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        for (std::size_t j = i + 1; j < traj.size(); ++j) {
            CHECK(std::fabs(secant_rate(traj, traj[i].t_hours, traj[j].t_hours).value - 0.5) <= 1e-9);
        }
    }
}

TEST_CASE("secant errors")
{
    const auto traj = sample({0, 1, 2}, linear);
    CHECK_THROWS_AS(secant_rate(traj, 1, 1), IntervalError);
    CHECK_THROWS_AS(secant_rate(traj, 2, 1), IntervalError);
    try {
        secant_rate(traj, 0, 1.5);
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        CHECK(std::string(e.what()).find("[0, 1, 2]") != std::string::npos);
    }
}

TEST_CASE("central difference is exact for a quadratic on a symmetric stencil")
{
    const auto traj = sample({1.9, 2.0, 2.1}, [](double t) { return 90.0 + t * t; });
    const auto r = instantaneous_rate(traj, 2.0);
    CHECK(std::fabs(r.value - 4.0) <= 1e-9);
    CHECK(r.method == RateMethod::CentralDifference);
    CHECK(r.t_start == 1.9);
    CHECK(r.t_end == 2.1);
}

TEST_CASE("central difference is exact for quadratics on uneven stencils too")
{
    const std::vector<double> times{0.0, 0.3, 1.1, 1.2, 2.9, 4.0, 4.05, 7.5};
    const auto traj = sample(times, quadratic);
    for (std::size_t k = 1; k + 1 < times.size(); ++k) {
        CHECK(std::fabs(instantaneous_rate(traj, times[k]).value - quadratic_slope(times[k])) <= 1e-9);
    }
}

TEST_CASE("instantaneous rate of a linear trajectory is its slope everywhere")
{
    const auto traj = sample(grid(1.0, 0.25, 10), linear);
    for (double t = 1.0; t <= 3.25; t += 0.125) CHECK(std::fabs(instantaneous_rate(traj, t).value - 0.5) <= 1e-9);
}

TEST_CASE("boundary and between-sample rates")
{
    const auto traj = sample({0, 1, 3}, quadratic);
    const auto first = instantaneous_rate(traj, 0);
    CHECK(first.value == doctest::Approx(quadratic(1) - quadratic(0)));
    CHECK(first.t_end == 1.0);
    const auto last = instantaneous_rate(traj, 3);
    CHECK(last.value == doctest::Approx((quadratic(3) - quadratic(1)) / 2));
    const auto mid = instantaneous_rate(traj, 2);
    CHECK(mid.value == last.value);
    CHECK(mid.t_start == 1.0);
}

TEST_CASE("instantaneous rate errors")
{
    CHECK_THROWS_AS(instantaneous_rate(sample({1}, linear), 1), InsufficientDataError);
    CHECK_THROWS_AS(instantaneous_rate(sample({}, linear), 0), InsufficientDataError);
    CHECK_THROWS_AS(instantaneous_rate(sample({1, 2}, linear), 0.5), ExtrapolationError);
    CHECK_THROWS_AS(instantaneous_rate(sample({1, 2}, linear), 2.5), ExtrapolationError);
}

TEST_CASE("polynomial fits recover their generators")
{
    SUBCASE("degree 1")
    {
        const auto traj = sample(grid(0.0, 1.0, 6), linear);
        const auto fit = fit_polynomial(traj, 1);
        REQUIRE(fit.coefficients.size() == 2);
        CHECK(std::fabs(fit.coefficients[0] - 99.0) <= 1e-9);
        CHECK(std::fabs(fit.coefficients[1] - 0.5) <= 1e-9);
        CHECK(fit.residual_sum_of_squares <= 1e-9);
        CHECK(fit.residual_sum_of_squares >= 0.0);
    }
    SUBCASE("degree 2")
    {
        const auto fit = fit_polynomial(sample(grid(0.0, 0.5, 10), quadratic), 2);
        CHECK(std::fabs(fit.coefficients[0] - 90.0) <= 1e-6);
        CHECK(std::fabs(fit.coefficients[1] - 3.0) <= 1e-6);
        CHECK(std::fabs(fit.coefficients[2] + 0.2) <= 1e-6);
        for (double t : {0.0, 1.3, 4.5}) CHECK(std::fabs(fit_rate(fit, sample(grid(0.0, 0.5, 10), quadratic), t).value - quadratic_slope(t)) <= 1e-6);
    }
    SUBCASE("degree 3 away from the origin")
    {
        const auto cubic = [](double t) { return 50.0 + 0.1 * t - 0.02 * t * t + 0.001 * t * t * t; };
        const auto traj = sample(grid(100.0, 2.5, 12), cubic);
        const auto fit = fit_polynomial(traj, 3);
        CHECK(fit.origin == 100.0);
        CHECK(fit.coefficients[0] == doctest::Approx(50.0).epsilon(1e-6));
        CHECK(fit.coefficients[1] == doctest::Approx(0.1).epsilon(1e-6));
        CHECK(fit.coefficients[2] == doctest::Approx(-0.02).epsilon(1e-6));
        CHECK(fit.coefficients[3] == doctest::Approx(0.001).epsilon(1e-6));
        CHECK(fit.value_at(110.0) == doctest::Approx(cubic(110.0)).epsilon(1e-10));
        const double d = 0.1 - 0.04 * 110.0 + 0.003 * 110.0 * 110.0;
        CHECK(fit.derivative_at(110.0) == doctest::Approx(d).epsilon(1e-8));
    }
    SUBCASE("residual of a line fitted to a parabola")
    {
        // Closed form for (0,0),(1,1),(2,4): y = 2t - 1/3, residuals 1/3, -2/3, 1/3.
        const auto fit = fit_polynomial(sample({0, 1, 2}, [](double t) { return t * t; }), 1);
        CHECK(fit.coefficients[0] == doctest::Approx(-1.0 / 3.0));
        CHECK(fit.coefficients[1] == doctest::Approx(2.0));
        CHECK(fit.residual_sum_of_squares == doctest::Approx(2.0 / 3.0));
    }
}

TEST_CASE("fit errors")
{
    CHECK_THROWS_AS(fit_polynomial(sample({1}, linear), 1), InsufficientDataError);
    CHECK_THROWS_AS(fit_polynomial(sample({1, 2, 3}, linear), 3), InsufficientDataError);
    CHECK_THROWS_AS(fit_polynomial(sample({1, 2, 3}, linear), 0), InvalidArgumentError);
    CHECK_THROWS_AS(fit_polynomial(sample({1, 2, 3, 4, 5}, linear), 4), InvalidArgumentError);
}

TEST_CASE("effort")
{
    const RateEstimate half{0.5, RateMethod::Secant, 0, 1};
    CHECK(effort(1.0, half).effort == 0.5);
    CHECK(effort(2.0, RateEstimate{0.425}).effort == doctest::Approx(0.85).epsilon(1e-15));
    CHECK(effort(1.0, RateEstimate{0.0}).effort == 0.0);
    CHECK(effort(3.0, half).alpha == 3.0);
    CHECK(effort(3.0, half).rate.value == 0.5);
    CHECK_THROWS_AS(effort(0.0, half), InvalidArgumentError);
    CHECK_THROWS_AS(effort(-1.0, half), InvalidArgumentError);
    CHECK_THROWS_AS(effort(std::nan(""), half), InvalidArgumentError);
}

TEST_CASE("effort is linear in alpha")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> rate_d(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const RateEstimate r{rate_d(rng)};
        CHECK(effort(1.0, r).effort == r.value);
        for (const double alpha : {0.25, 1.0, 4.0}) {
            for (const double k : {2.0, 10.0}) CHECK(effort(k * alpha, r).effort == k * effort(alpha, r).effort);
        }
        // Arbitrary alpha: equal up to the rounding of one extra product.
        const double alpha = std::uniform_real_distribution<double>(0.1, 9.0)(rng);
        const double lhs = effort(10.0 * alpha, r).effort;
        const double rhs = 10.0 * effort(alpha, r).effort;
        CHECK(std::fabs(lhs - rhs) <= 4 * std::numeric_limits<double>::epsilon() * std::fabs(rhs));
    }
}

TEST_CASE("trend classification")
{
    CHECK(classify_trend(sample(grid(0.0, 1.0, 6), linear)) == TrendClass::Uniform);
    CHECK(classify_trend(synthetic::from_slopes({0.2, 0.5, 0.9}), 0.05) == TrendClass::Positive);
    CHECK(classify_trend(synthetic::from_slopes({-0.3, -0.4}), 0.05) == TrendClass::Negative);
    CHECK(classify_trend(synthetic::from_slopes({0.3, -0.3, 0.3, -0.3})) == TrendClass::Mixed);
    CHECK(classify_trend(synthetic::from_slopes({-0.5, -0.5, -0.5})) == TrendClass::Negative);
    CHECK(classify_trend(synthetic::from_slopes({0.0, 0.0})) == TrendClass::Mixed);
    CHECK(classify_trend(synthetic::from_slopes({0.5, 0.52}), 0.05) == TrendClass::Uniform);
    CHECK(classify_trend(synthetic::from_slopes({0.01, 0.5}), 0.05) == TrendClass::Mixed);
    CHECK_THROWS_AS(classify_trend(sample({1}, linear)), InsufficientDataError);
    CHECK_THROWS_AS(classify_slopes({0.1}, -1.0), InvalidArgumentError);
}

TEST_CASE("secant consistency")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> step(0.01, 5.0), xd(80.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double t0 = step(rng), t1 = t0 + step(rng), t2 = t1 + step(rng);
        const auto traj = Trajectory("p", {synthetic::point("p", t0, xd(rng)), synthetic::point("p", t1, xd(rng)),
                                           synthetic::point("p", t2, xd(rng))});
        const double whole = secant_rate(traj, t0, t2).value;
        const double weighted =
            ((t1 - t0) * secant_rate(traj, t0, t1).value + (t2 - t1) * secant_rate(traj, t1, t2).value) / (t2 - t0);
        CHECK(std::fabs(whole - weighted) <= 1e-12 * std::max(1.0, std::fabs(whole)));
    }
}

TEST_CASE("translation invariance")
{
    std::mt19937_64 rng(13);
    const std::vector<double> times{0.0, 0.4, 1.0, 1.7, 3.0};
    for (int i = 0; i < 200; ++i) {
        std::uniform_real_distribution<double> xd(90.0, 100.0);
        std::vector<double> xs;
        for (std::size_t k = 0; k < times.size(); ++k) xs.push_back(xd(rng));
        const double dt = std::uniform_real_distribution<double>(0.0, 50.0)(rng);
        const double dx = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
        std::vector<QualitySnapshot> base, moved;
        for (std::size_t k = 0; k < times.size(); ++k) {
            base.push_back(synthetic::point("p", times[k], xs[k]));
            moved.push_back(synthetic::point("p", times[k] + dt, xs[k] + dx));
        }
        const Trajectory a("p", base), b("p", moved);
        for (std::size_t k = 0; k < times.size(); ++k) {
            CHECK(std::fabs(instantaneous_rate(a, a[k].t_hours).value - instantaneous_rate(b, b[k].t_hours).value) <= 1e-9);
        }
        CHECK(std::fabs(secant_rate(a, 0.0, 3.0).value - secant_rate(b, dt, 3.0 + dt).value) <= 1e-9);
        CHECK(classify_trend(a) == classify_trend(b));
    }
}

TEST_CASE("improvement and secant agree in sign")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> xd(95.0, 100.0);
    for (int i = 0; i < 500; ++i) {
        const double xi = xd(rng), xf = xd(rng);
        const auto traj = Trajectory("p", {synthetic::point("p", 0.0, xi), synthetic::point("p", 1.5, xf)});
        CHECK((improvement(xi, xf) > 0) == (secant_rate(traj, 0.0, 1.5).value > 0));
    }
}

TEST_CASE("interval rates")
{
    const auto rates = interval_rates(synthetic::from_slopes({0.2, -0.1}));
    REQUIRE(rates.size() == 2);
    CHECK(rates[0].value == doctest::Approx(0.2));
    CHECK(rates[1].value == doctest::Approx(-0.1));
    CHECK(rates[1].t_start == 1.0);
    CHECK(interval_rates(sample({1}, linear)).empty());
}
