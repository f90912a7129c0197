#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excel/errors.hpp"
#include "excel/history.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

#include <json.hpp>

#include <random>

using namespace excel;
using testing_support::TempDir;

namespace {

const WallClock kEpoch = parse_rfc3339("2026-10-16T09:00:00Z");

SourceStats stats(std::size_t total, std::size_t comment, std::string file = "a.c")
{
    SourceStats s;
    s.file_name = std::move(file);
    s.total_lines = total;
    s.comment_lines = comment;
    s.loc = total - comment;
    return s;
}

QualitySnapshot snap(const std::string& project, double t, std::size_t errors = 0)
{
    return make_snapshot(project, t, kEpoch + std::chrono::seconds(static_cast<long>(t * 3600)), stats(1117, 173), errors);
}

} // namespace

TEST_CASE("rfc3339 formatting and parsing")
{
    CHECK(format_rfc3339(kEpoch) == "2026-10-16T09:00:00Z");
    CHECK(parse_rfc3339("2026-10-16T11:30:00+02:00") == kEpoch + std::chrono::minutes(30));
    CHECK(parse_rfc3339("2026-10-16T09:00:00.750Z") == kEpoch);
    CHECK(parse_rfc3339("2026-10-16t09:00:00z") == kEpoch);
    CHECK_THROWS_AS(parse_rfc3339("2026-10-16 09:00:00"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_rfc3339("2026-02-30T00:00:00Z"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_rfc3339("2026-10-16T09:00:00"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_rfc3339("2026-10-16T09:00:00Zjunk"), InvalidArgumentError);
}

TEST_CASE("make_snapshot derives metrics and rejects bad input")
{
    const auto s = snap("p", 0.0, 8);
    CHECK(s.metrics == compute_metrics(8, 944));
    CHECK_THROWS_AS(snap("p", -1.0), InvalidArgumentError);
    CHECK_THROWS_AS(snap("", 0.0), InvalidArgumentError);
    CHECK_THROWS_AS(make_snapshot("p", 0.0, kEpoch, stats(5, 5), 1), UndefinedMetricError);
}

TEST_CASE("record layout")
{
    const std::string line = encode_record(snap("demo", 2.0, 8));
    CHECK(line == R"({"project":"demo","wall_clock":"2026-10-16T11:00:00Z","t_hours":2.0,"file":"a.c",)"
                  R"("total_lines":1117,"comment_lines":173,"blank_lines":0,"loc":944,"for_count":0,)"
                  R"("while_count":0,"errors":8,"el_percent":0.84745762711864403,"x":99.152542372881356})");
    const auto obj = nlohmann::json::parse(line);
    CHECK(obj.size() == 13);
}

TEST_CASE("append to an empty store and load back")
{
    TempDir dir;
    const auto store = dir / "store.jsonl";
    const auto s = snap("A", 0.0, 3);
    append_snapshot(store, s);
    const auto t = load_trajectory(store, "A");
    REQUIRE(t.size() == 1);
    CHECK(t[0] == s);
    CHECK(load_store(store).size() == 1);
}

TEST_CASE("missing store is empty")
{
    TempDir dir;
    CHECK(load_store(dir / "none.jsonl").empty());
    CHECK(load_trajectory(dir / "none.jsonl", "A").empty());
}

TEST_CASE("out-of-order append is rejected")
{
    TempDir dir;
    const auto store = dir / "store.jsonl";
    append_snapshot(store, snap("A", 1.0));
    CHECK_THROWS_AS(append_snapshot(store, snap("A", 0.5)), OrderingError);
    CHECK_THROWS_AS(append_snapshot(store, snap("A", 1.0)), OrderingError);
    CHECK_NOTHROW(append_snapshot(store, snap("B", 0.5))); // other projects are independent
    CHECK(load_store(store).size() == 2);
}

TEST_CASE("append rejects inconsistent snapshots")
{
    TempDir dir;
    auto s = snap("A", 0.0, 1);
    s.metrics.degree_of_excellence = 50;
    CHECK_THROWS_AS(append_snapshot(dir / "s.jsonl", s), InvalidArgumentError);
    s = snap("A", 0.0, 1);
    s.stats.loc = 3;
    CHECK_THROWS_AS(append_snapshot(dir / "s.jsonl", s), InvalidArgumentError);
}

TEST_CASE("loading selects one project in order")
{
    TempDir dir;
    const auto store = dir / "store.jsonl";
    append_snapshot(store, snap("A", 0.0));
    append_snapshot(store, snap("B", 0.0, 1));
    append_snapshot(store, snap("A", 1.5, 2));
    append_snapshot(store, snap("B", 3.0, 4));
    append_snapshot(store, snap("A", 2.25, 1));
    const auto a = load_trajectory(store, "A");
    REQUIRE(a.size() == 3);
    CHECK(a.project_id() == "A");
    CHECK(a[0].t_hours == 0.0);
    CHECK(a[1].t_hours == 1.5);
    CHECK(a[2].t_hours == 2.25);
    CHECK(load_trajectory(store, "B").size() == 2);
    CHECK(load_trajectory(store, "C").empty());
}

TEST_CASE("round trip of 50 generated snapshots")
{
    TempDir dir;
    const auto store = dir / "store.jsonl";
    std::mt19937_64 rng(50);
    std::vector<QualitySnapshot> want_a, want_b;
    double ta = 0, tb = 0;
    for (int i = 0; i < 50; ++i) {
        const bool to_a = std::bernoulli_distribution(0.5)(rng);
        double& t = to_a ? ta : tb;
        auto st = gen::random_stats(rng, "file \"" + std::to_string(i) + "\".c");
        const auto errors = std::uniform_int_distribution<std::size_t>(0, 2 * st.loc)(rng);
        const auto s = make_snapshot(to_a ? "A" : "B", t, kEpoch + std::chrono::seconds(i * 977), st, errors);
        t += std::uniform_real_distribution<double>(1e-3, 10.0)(rng); // non-representable decimals
        append_snapshot(store, s);
        (to_a ? want_a : want_b).push_back(s);
    }
    CHECK(load_trajectory(store, "A").snapshots() == want_a);
    CHECK(load_trajectory(store, "B").snapshots() == want_b);
}

TEST_CASE("truncated record is reported with its line")
{
    TempDir dir;
    const auto store = dir / "store.jsonl";
    append_snapshot(store, snap("A", 0.0));
    append_snapshot(store, snap("A", 1.0));
    std::string text = testing_support::read_file(store);
    text += encode_record(snap("A", 2.0)).substr(0, 40);
    testing_support::write_file(store, text);
    try {
        load_trajectory(store, "A");
        FAIL("expected CorruptionError");
    } catch (const CorruptionError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(append_snapshot(store, snap("A", 5.0)), CorruptionError);
}

TEST_CASE("integrity checks on load")
{
    TempDir dir;
    const auto store = dir / "store.jsonl";
    const std::string good = encode_record(snap("A", 0.0, 8));

    SUBCASE("metrics that do not re-derive")
    {
        std::string bad = encode_record(snap("A", 1.0, 8));
        bad.replace(bad.find("\"errors\":8"), 10, "\"errors\":9");
        testing_support::write_file(store, good + "\n" + bad + "\n");
        CHECK_THROWS_AS(load_store(store), CorruptionError);
    }
    SUBCASE("timestamps regress within a project")
    {
        testing_support::write_file(store, encode_record(snap("A", 2.0)) + "\n" + good + "\n");
        try {
            load_store(store);
            FAIL("expected CorruptionError");
        } catch (const CorruptionError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("wrong field types")
    {
        std::string bad = good;
        bad.replace(bad.find("\"loc\":944"), 9, "\"loc\":\"944\"");
        testing_support::write_file(store, bad + "\n");
        CHECK_THROWS_AS(load_store(store), CorruptionError);
    }
    SUBCASE("blank lines are skipped")
    {
        testing_support::write_file(store, "\n" + good + "\n\n");
        CHECK(load_store(store).size() == 1);
    }
}

TEST_CASE("append after a final record missing its newline")
{
    TempDir dir;
    const auto store = dir / "store.jsonl";
    testing_support::write_file(store, encode_record(snap("A", 0.0)));
    append_snapshot(store, snap("A", 1.0));
    CHECK(load_trajectory(store, "A").size() == 2);
}

TEST_CASE("trajectory invariants")
{
    CHECK_THROWS_AS(Trajectory("A", {snap("A", 1.0), snap("A", 1.0)}), InvalidArgumentError);
    CHECK_THROWS_AS(Trajectory("A", {snap("A", 0.0), snap("B", 1.0)}), InvalidArgumentError);
    CHECK_NOTHROW(Trajectory("A", {snap("A", 0.0), snap("A", 1.0)}));
}
