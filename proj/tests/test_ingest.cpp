#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "ppgrow/errors.hpp"
#include "ppgrow/ingest.hpp"
#include "ppgrow/simulate.hpp"

using namespace ppgrow;

TEST_SUITE("ingest") {
  TEST_CASE("parses three- and four-column lines, skips comments") {
    std::istringstream in(
        "% KONECT-style header\n"
        "# another comment\n"
        "12 34 1100000000\n"
        "\n"
        "5 6 1 1100000000\n"
        "a b 42\n");
    const ParseResult out = parse_edge_list(in);
    REQUIRE(out.records.size() == 3);
    CHECK(out.records[0].src == "12");
    CHECK(out.records[0].dst == "34");
    CHECK(out.records[0].timestamp == 1100000000);
    CHECK(out.records[1].src == "5");
    CHECK(out.records[1].timestamp == 1100000000);  // weight column ignored
    CHECK(out.records[2].timestamp == 42);
    CHECK(out.n_comment_lines == 2);
    CHECK(out.malformed.empty());
  }

  TEST_CASE("collects malformed lines without aborting") {
    std::istringstream in(
        "1 2 100\n"
        "only-two 3\n"
        "3 4 not_a_number\n"
        "5 6 7 8 9\n"
        "7 8 200\n");
    const ParseResult out = parse_edge_list(in);
    CHECK(out.records.size() == 2);
    REQUIRE(out.malformed.size() == 3);
    CHECK(out.malformed[0].line_number == 2);
    CHECK(out.malformed[1].line_number == 3);
    CHECK(out.malformed[2].line_number == 4);
  }

  TEST_CASE("zero parseable lines is an empty-input error") {
    std::istringstream comments_only("% nothing\n# here\n");
    CHECK_THROWS_AS((void)parse_edge_list(comments_only), empty_input_error);
    std::istringstream junk("x\ny\n");
    CHECK_THROWS_AS((void)parse_edge_list(junk), empty_input_error);
  }

  TEST_CASE("event conversion re-bases and keeps the absolute origin") {
    std::vector<RawEdgeRecord> records{{"a", "b", 86400}, {"c", "d", 0}};
    const EventSeries series = to_event_times(records, 0);
    CHECK((series.times.values() == std::vector<double>{0.0, 1.0}));
    CHECK(series.origin_day == doctest::Approx(0.0));
  }

  TEST_CASE("timezone offset shifts local time exactly") {
    // 1970-01-02 06:00 UTC with offset -360 minutes = 1970-01-02 00:00 local.
    std::vector<RawEdgeRecord> records{{"a", "b", 86400 + 6 * 3600}};
    const EventSeries series = to_event_times(records, -360);
    CHECK(series.origin_day == doctest::Approx(1.0));
    const EventSeries utc = to_event_times(records, 0);
    CHECK(utc.origin_day == doctest::Approx(1.25));
  }

  TEST_CASE("stable sort preserves duplicate-timestamp order and ties") {
    std::vector<RawEdgeRecord> records{
        {"late", "x", 100}, {"tie1", "x", 50}, {"tie2", "x", 50}, {"early", "x", 10}};
    const EventSeries series = to_event_times(records, 0);
    REQUIRE(series.times.size() == 4);
    CHECK(series.times[0] == 0.0);
    CHECK(series.times[1] == series.times[2]);  // tie preserved, not jittered
    CHECK(series.times[3] > series.times[2]);
  }

  TEST_CASE("optional jitter breaks ties but keeps second resolution ordering") {
    std::vector<RawEdgeRecord> records{
        {"a", "x", 50}, {"b", "x", 50}, {"c", "x", 50}, {"d", "x", 120}};
    const EventSeries plain = to_event_times(records, 0);
    CHECK(plain.times[0] == plain.times[1]);
    const EventSeries jittered = to_event_times(records, 0, 99);
    CHECK(jittered.times[0] < jittered.times[1]);
    CHECK(jittered.times[1] < jittered.times[2]);
    // Jitter is sub-second: event order across distinct seconds is unchanged.
    CHECK(jittered.times[2] < jittered.times[3]);
    const EventSeries again = to_event_times(records, 0, 99);
    CHECK(jittered.times.values() == again.times.values());
  }

  TEST_CASE("count windows slice, re-base, and discard the tail") {
    std::vector<double> ts(1050);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = static_cast<double>(i) * 0.01;
    const CountWindowSet small = windows_by_count(EventTimes{ts}, 500);
    CHECK(small.windows.size() == 2);
    CHECK(small.n_discarded == 50);
    CHECK(small.windows[0].times.size() == 500);
    CHECK(small.windows[1].times.front() == 0.0);
    CHECK(small.windows[1].start_offset == doctest::Approx(5.0));
    CHECK(small.windows[1].index == 1);

    std::vector<double> ts2(1000);
    for (std::size_t i = 0; i < ts2.size(); ++i) ts2[i] = static_cast<double>(i);
    const CountWindowSet even = windows_by_count(EventTimes{ts2}, 200);
    CHECK(even.windows.size() == 5);
    CHECK(even.n_discarded == 0);
    for (const CountWindow& w : even.windows) {
      CHECK(w.times.front() == 0.0);
      CHECK(w.times.size() == 200);
    }

    CHECK(windows_by_count(EventTimes{std::vector<double>{1.0, 2.0}}, 5).windows.empty());
    CHECK_THROWS_AS((void)windows_by_count(EventTimes{}, 0), domain_error);
  }

  TEST_CASE("restrict_period keeps [from, to) by local calendar day") {
    // origin at day 99.5; events at days 99.5, 100.2, 101.7, 102.1.
    EventSeries series;
    series.times = EventTimes{std::vector<double>{0.0, 0.7, 2.2, 2.6}};
    series.origin_day = 99.5;
    const EventSeries cut =
        restrict_period(series, civil_from_days(100), civil_from_days(102));
    REQUIRE(cut.times.size() == 2);
    CHECK(cut.times[0] == 0.0);  // re-based to its own first event
    CHECK(cut.origin_day == doctest::Approx(100.2));
    CHECK(cut.times[1] == doctest::Approx(1.5));

    const EventSeries all =
        restrict_period(series, civil_from_days(99), civil_from_days(103));
    CHECK(all.times.size() == 4);

    const EventSeries none =
        restrict_period(series, civil_from_days(500), civil_from_days(501));
    CHECK(none.times.empty());
  }

  TEST_CASE("edge-list writer round trips at second resolution") {
    const EventTimes times = simulate_sepp(
        SeppParams{50.0, 0.3, TriggeringKernel::exponential(20.0)}, 20.0, std::nullopt, 8);
    std::ostringstream out;
    write_edge_list(out, times, 1104537600);
    std::istringstream in(out.str());
    const ParseResult parsed = parse_edge_list(in);
    CHECK(parsed.records.size() == times.size());
    const EventSeries series = to_event_times(parsed.records, 0);
    REQUIRE(series.times.size() == times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double expected = std::llround(times[i] * 86400.0) / 86400.0 -
                              std::llround(times[0] * 86400.0) / 86400.0;
      CHECK(series.times[i] == doctest::Approx(expected).epsilon(1e-12));
    }
    // Writing the parsed series back yields byte-identical text.
    std::ostringstream out2;
    write_edge_list(out2, series.times,
                    1104537600 + std::llround(times[0] * 86400.0));
    CHECK(out.str() == out2.str());
  }
}
