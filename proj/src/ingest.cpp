#include "ppgrow/ingest.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ppgrow/errors.hpp"
#include "ppgrow/rng.hpp"

namespace ppgrow {

namespace {

bool parse_epoch_seconds(const std::string& token, std::int64_t& out) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE) return false;
  out = v;
  return true;
}

}  // namespace

ParseResult parse_edge_list(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;  // blank
    if (line[first] == '%' || line[first] == '#') {
      ++result.n_comment_lines;
      continue;
    }
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (fields >> tok) tokens.push_back(tok);

    if (tokens.size() != 3 && tokens.size() != 4) {
      result.malformed.push_back({line_number, line, "expected 3 or 4 columns"});
      continue;
    }
    std::int64_t ts = 0;
    if (!parse_epoch_seconds(tokens.back(), ts)) {
      result.malformed.push_back({line_number, line, "timestamp is not an integer"});
      continue;
    }
    if (ts < 0) {
      result.malformed.push_back({line_number, line, "negative timestamp"});
      continue;
    }
    result.records.push_back({tokens[0], tokens[1], ts});
  }
  if (result.records.empty()) {
    throw empty_input_error("no parseable edge-list lines (" +
                            std::to_string(result.malformed.size()) + " malformed)");
  }
  return result;
}

EventSeries to_event_times(const std::vector<RawEdgeRecord>& records, int tz_offset_minutes,
                           std::optional<std::uint64_t> jitter_seed) {
  EventSeries series;
  if (records.empty()) return series;

  const std::int64_t shift = static_cast<std::int64_t>(tz_offset_minutes) * 60;
  std::vector<double> local_seconds(records.size());
  if (jitter_seed) {
    RngStream rng(*jitter_seed, 0);
    for (std::size_t i = 0; i < records.size(); ++i) {
      local_seconds[i] = static_cast<double>(records[i].timestamp + shift) + rng.uniform();
    }
  } else {
    for (std::size_t i = 0; i < records.size(); ++i) {
      local_seconds[i] = static_cast<double>(records[i].timestamp + shift);
    }
  }

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return local_seconds[a] < local_seconds[b];
  });

  const double first = local_seconds[order.front()];
  std::vector<double> times(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    times[i] = (local_seconds[order[i]] - first) / 86400.0;
  }
  series.times = EventTimes(std::move(times));
  series.origin_day = first / 86400.0;
  return series;
}

CountWindowSet windows_by_count(const EventTimes& times, std::size_t window_size) {
  if (window_size < 1) throw domain_error("window size must be >= 1 event");
  CountWindowSet set;
  set.window_size = window_size;
  const std::size_t n_windows = times.size() / window_size;
  set.n_discarded = times.size() - n_windows * window_size;
  set.windows.reserve(n_windows);
  for (std::size_t w = 0; w < n_windows; ++w) {
    const std::size_t begin = w * window_size;
    const double base = times[begin];
    std::vector<double> slice(window_size);
    for (std::size_t i = 0; i < window_size; ++i) slice[i] = times[begin + i] - base;
    CountWindow window;
    window.index = w;
    window.times = EventTimes(std::move(slice));
    window.start_offset = base;
    window.end_offset = times[begin + window_size - 1];
    set.windows.push_back(std::move(window));
  }
  return set;
}

EventSeries restrict_period(const EventSeries& series, const CivilDate& from,
                            const CivilDate& to) {
  const std::int64_t day_from = days_from_civil(from);
  const std::int64_t day_to = days_from_civil(to);
  if (day_to <= day_from) throw domain_error("period end must follow period start");

  std::vector<double> kept_abs;
  for (double t : series.times) {
    const double abs_time = series.origin_day + t;
    const auto day = static_cast<std::int64_t>(std::floor(abs_time));
    if (day >= day_from && day < day_to) kept_abs.push_back(abs_time);
  }

  EventSeries out;
  if (kept_abs.empty()) return out;
  const double base = kept_abs.front();
  for (double& v : kept_abs) v -= base;
  out.times = EventTimes(std::move(kept_abs));
  out.origin_day = base;
  return out;
}

void write_edge_list(std::ostream& out, const EventTimes& times,
                     std::int64_t origin_epoch_seconds) {
  out << "% synthetic event stream: src dst ts (epoch seconds)\n";
  std::size_t i = 0;
  for (double t : times) {
    const std::int64_t ts =
        origin_epoch_seconds + static_cast<std::int64_t>(std::llround(t * 86400.0));
    out << (i + 1) << ' ' << (i + 2) << ' ' << ts << '\n';
    ++i;
  }
}

}  // namespace ppgrow
