#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppgrow/dates.hpp"
#include "ppgrow/event_times.hpp"

namespace ppgrow {

// One line of a whitespace-separated edge list: "src dst ts" or
// "src dst weight ts" (the weight is read and discarded). Node ids are
// opaque strings; timestamps are integer epoch seconds (UTC).
struct RawEdgeRecord {
  std::string src;
  std::string dst;
  std::int64_t timestamp{0};
};

struct MalformedLine {
  std::size_t line_number{0};
  std::string content;
  std::string reason;
};

struct ParseResult {
  std::vector<RawEdgeRecord> records;
  std::vector<MalformedLine> malformed;
  std::size_t n_comment_lines{0};
};

// Reads an edge list, skipping '%'/'#' comment lines and blank lines.
// Malformed lines are collected, not fatal; a source with zero parseable
// lines throws empty_input_error.
[[nodiscard]] ParseResult parse_edge_list(std::istream& in);

// Event sequence in local time. times run from the first event (= 0);
// origin_day is the absolute local time of t = 0 in days since 1970-01-01,
// so origin_day + t places any event on the local calendar.
struct EventSeries {
  EventTimes times;
  double origin_day{0.0};
};

// Epoch seconds -> local days: timestamps are shifted by the tz offset,
// divided by 86400, stably sorted (equal timestamps keep input order) and
// re-based to the first event. The optional jitter adds a seeded uniform
// sub-second offset to each timestamp before sorting, for breaking the
// heavy second-resolution ties in raw exports; default off.
[[nodiscard]] EventSeries to_event_times(const std::vector<RawEdgeRecord>& records,
                                         int tz_offset_minutes,
                                         std::optional<std::uint64_t> jitter_seed = {});

struct CountWindow {
  std::size_t index{0};
  EventTimes times;     // re-based: the window's first event maps to 0
  double start_offset{0.0};  // t of the first event in the parent series
  double end_offset{0.0};    // t of the last event in the parent series
};

struct CountWindowSet {
  std::vector<CountWindow> windows;
  std::size_t window_size{0};
  std::size_t n_discarded{0};  // events in the partial tail
};

// Consecutive windows of exactly `window_size` events; the partial tail is
// discarded and counted. Fewer events than one window yields zero windows.
[[nodiscard]] CountWindowSet windows_by_count(const EventTimes& times,
                                              std::size_t window_size);

// Keeps events whose local calendar day lies in [from, to); the result is
// re-based to its own first event. An empty result is legal.
[[nodiscard]] EventSeries restrict_period(const EventSeries& series, const CivilDate& from,
                                          const CivilDate& to);

// Emits "src dst ts" lines with synthetic node ids, timestamps at second
// resolution: ts = origin_epoch_seconds + round(t * 86400). Parsing the
// output back reproduces the rounded times exactly.
void write_edge_list(std::ostream& out, const EventTimes& times,
                     std::int64_t origin_epoch_seconds);

}  // namespace ppgrow
