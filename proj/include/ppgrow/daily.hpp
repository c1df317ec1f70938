#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppgrow/event_times.hpp"
#include "ppgrow/gof.hpp"

namespace ppgrow {

// Fixed-offset local clock with one inactive window per day.
//
// The window is [inactive_start_hour, inactive_end_hour) in local hours and
// may wrap past midnight (start > end); equal start and end mean no window.
// tz_offset_minutes documents the signed shift that was applied to raw UTC
// timestamps when the series was converted to local time (conversion happens
// at ingestion; there is no DST handling anywhere).
struct ActiveHoursPolicy {
  double inactive_start_hour{0.0};
  double inactive_end_hour{0.0};
  int tz_offset_minutes{0};

  [[nodiscard]] double inactive_length_hours() const;
  [[nodiscard]] double active_hours_per_day() const { return 24.0 - inactive_length_hours(); }
  [[nodiscard]] bool is_inactive(double hour) const;
  void require_valid() const;
};

// One local calendar day of events. Day boundaries sit at local midnight;
// an event at exactly 00:00 belongs to the starting day.
struct DayEvents {
  std::int64_t civil_day{0};  // local days since 1970-01-01
  std::vector<double> hours;  // local hour-of-day in [0, 24), sorted
};

// Buckets events into local days. `origin_day` is the absolute local time of
// t = 0 in days since 1970-01-01 (fractional part = time of day). Returns a
// contiguous range of days from the first to the last event, including empty
// days in between.
[[nodiscard]] std::vector<DayEvents> split_days(const EventTimes& times, double origin_day,
                                                const ActiveHoursPolicy& policy);

struct ActiveDayEvents {
  std::vector<double> hours;  // events outside the inactive window
  // Inter-event times in hours, computed within each maximal active segment
  // of the day; the gap that spans the inactive window is discarded rather
  // than kept as one artificially long interval.
  std::vector<double> iets;
  std::size_t n_inactive{0};  // events that fell inside the window
};

[[nodiscard]] ActiveDayEvents filter_active(const DayEvents& day,
                                            const ActiveHoursPolicy& policy);

struct DailyRateEstimate {
  std::int64_t civil_day{0};
  std::string date_label;  // YYYY-MM-DD
  int iso_weekday{0};      // 1 = Monday .. 7 = Sunday
  std::size_t n_total{0};
  std::size_t n_active{0};
  double active_hours{0.0};
  double rate_per_hour{0.0};
  double rate_per_day{0.0};
  std::optional<KsResult> ks;  // plug-in exponentiality test on active IETs
  bool ks_skipped{false};
  std::string ks_skip_reason;
};

// Rate = active events / active hours. The per-day KS test runs on the
// active-segment IETs with the rate estimated from them; days with fewer
// than 5 active events (or degenerate IETs) skip it and carry a flag, which
// is also how they are kept out of acceptance tables.
[[nodiscard]] DailyRateEstimate daily_rate(const DayEvents& day,
                                           const ActiveHoursPolicy& policy,
                                           const std::vector<double>& alphas = kDefaultAlphas);

struct WeekdayMeanRate {
  int iso_weekday{0};
  std::string name;
  double mean_rate_per_hour{0.0};
  double mean_rate_per_day{0.0};
  std::size_t n_days{0};
};

// Mean daily rate per weekday; requires at least 7 estimated days.
[[nodiscard]] std::vector<WeekdayMeanRate> weekly_profile(
    const std::vector<DailyRateEstimate>& days);

struct BurstinessComparison {
  double b_all{0.0};
  double b_active{0.0};
  std::size_t n_iets_all{0};
  std::size_t n_iets_active{0};
};

// Burstiness of all IETs vs. IETs restricted to active time, over the local
// calendar days [start_day, end_day). For the active variant, events inside
// the window are removed and a gap between surviving events is kept only
// when it does not cross an inactive-window occurrence — so with an empty
// window the two statistics are identical by construction.
[[nodiscard]] BurstinessComparison burstiness_comparison(const EventTimes& times,
                                                         double origin_day,
                                                         const ActiveHoursPolicy& policy,
                                                         std::int64_t start_day,
                                                         std::int64_t end_day);

}  // namespace ppgrow
