#include "ppgrow/daily.hpp"

#include <algorithm>
#include <cmath>

#include "ppgrow/dates.hpp"
#include "ppgrow/errors.hpp"
#include "ppgrow/model.hpp"

namespace ppgrow {

double ActiveHoursPolicy::inactive_length_hours() const {
  const double len = inactive_end_hour - inactive_start_hour;
  if (len == 0.0) return 0.0;
  return len > 0.0 ? len : len + 24.0;
}

bool ActiveHoursPolicy::is_inactive(double hour) const {
  const double a = inactive_start_hour;
  const double b = inactive_end_hour;
  if (a == b) return false;
  if (a < b) return hour >= a && hour < b;
  return hour >= a || hour < b;  // wraps past midnight
}

void ActiveHoursPolicy::require_valid() const {
  const auto in_range = [](double h) { return std::isfinite(h) && h >= 0.0 && h < 24.0; };
  if (!in_range(inactive_start_hour) || !in_range(inactive_end_hour)) {
    throw domain_error("inactive window hours must lie in [0, 24)");
  }
}

std::vector<DayEvents> split_days(const EventTimes& times, double origin_day,
                                  const ActiveHoursPolicy& policy) {
  policy.require_valid();
  if (times.empty()) return {};
  if (!std::isfinite(origin_day)) throw domain_error("origin must be finite");

  const auto day_of = [&](double t) {
    return static_cast<std::int64_t>(std::floor(origin_day + t));
  };
  const std::int64_t first = day_of(times.front());
  const std::int64_t last = day_of(times.back());

  std::vector<DayEvents> days(static_cast<std::size_t>(last - first + 1));
  for (std::size_t i = 0; i < days.size(); ++i) {
    days[i].civil_day = first + static_cast<std::int64_t>(i);
  }
  for (double t : times) {
    const double abs_time = origin_day + t;
    const std::int64_t day = static_cast<std::int64_t>(std::floor(abs_time));
    const double hour = (abs_time - static_cast<double>(day)) * 24.0;
    days[static_cast<std::size_t>(day - first)].hours.push_back(std::min(hour, 24.0 * (1.0 - 1e-16)));
  }
  return days;
}

ActiveDayEvents filter_active(const DayEvents& day, const ActiveHoursPolicy& policy) {
  policy.require_valid();
  ActiveDayEvents out;
  out.hours.reserve(day.hours.size());
  for (double h : day.hours) {
    if (policy.is_inactive(h)) {
      ++out.n_inactive;
    } else {
      out.hours.push_back(h);
    }
  }

  // Maximal active segments of this day, as [lo, hi) hour intervals.
  const double a = policy.inactive_start_hour;
  const double b = policy.inactive_end_hour;
  std::vector<std::pair<double, double>> segments;
  if (a == b) {
    segments = {{0.0, 24.0}};
  } else if (a < b) {
    segments = {{0.0, a}, {b, 24.0}};
  } else {
    segments = {{b, a}};
  }

  for (const auto& [lo, hi] : segments) {
    double prev = -1.0;
    for (double h : out.hours) {
      if (h < lo || h >= hi) continue;
      if (prev >= 0.0) out.iets.push_back(h - prev);
      prev = h;
    }
  }
  return out;
}

DailyRateEstimate daily_rate(const DayEvents& day, const ActiveHoursPolicy& policy,
                             const std::vector<double>& alphas) {
  const ActiveDayEvents active = filter_active(day, policy);

  DailyRateEstimate est;
  est.civil_day = day.civil_day;
  est.date_label = format_date(day.civil_day);
  est.iso_weekday = iso_weekday(day.civil_day);
  est.n_total = day.hours.size();
  est.n_active = active.hours.size();
  est.active_hours = policy.active_hours_per_day();
  est.rate_per_hour =
      est.active_hours > 0.0 ? static_cast<double>(est.n_active) / est.active_hours : 0.0;
  est.rate_per_day = est.rate_per_hour * 24.0;

  if (est.n_active < 5) {
    est.ks_skipped = true;
    est.ks_skip_reason = "fewer than 5 active events";
    return est;
  }
  try {
    est.ks = ks_exp_estimated_rate(active.iets, alphas);
  } catch (const error& e) {
    est.ks_skipped = true;
    est.ks_skip_reason = e.what();
  }
  return est;
}

std::vector<WeekdayMeanRate> weekly_profile(const std::vector<DailyRateEstimate>& days) {
  if (days.size() < 7) {
    throw insufficient_data_error("weekly profile requires at least 7 days");
  }
  std::vector<WeekdayMeanRate> profile(7);
  for (int w = 1; w <= 7; ++w) {
    profile[static_cast<std::size_t>(w - 1)].iso_weekday = w;
    profile[static_cast<std::size_t>(w - 1)].name = weekday_name(w);
  }
  for (const DailyRateEstimate& d : days) {
    WeekdayMeanRate& row = profile[static_cast<std::size_t>(d.iso_weekday - 1)];
    row.mean_rate_per_hour += d.rate_per_hour;
    row.mean_rate_per_day += d.rate_per_day;
    ++row.n_days;
  }
  for (WeekdayMeanRate& row : profile) {
    if (row.n_days > 0) {
      row.mean_rate_per_hour /= static_cast<double>(row.n_days);
      row.mean_rate_per_day /= static_cast<double>(row.n_days);
    }
  }
  return profile;
}

BurstinessComparison burstiness_comparison(const EventTimes& times, double origin_day,
                                           const ActiveHoursPolicy& policy,
                                           std::int64_t start_day, std::int64_t end_day) {
  policy.require_valid();
  if (end_day <= start_day) throw domain_error("period end must follow period start");

  // Absolute local event times restricted to the period.
  std::vector<double> abs_times;
  abs_times.reserve(times.size());
  for (double t : times) {
    const double abs_time = origin_day + t;
    const auto day = static_cast<std::int64_t>(std::floor(abs_time));
    if (day >= start_day && day < end_day) abs_times.push_back(abs_time);
  }
  if (abs_times.size() < 3) {
    throw insufficient_data_error("burstiness comparison needs at least 3 events in period");
  }

  BurstinessComparison out;
  {
    Iets all;
    all.values.reserve(abs_times.size() - 1);
    for (std::size_t i = 1; i < abs_times.size(); ++i) {
      all.values.push_back(abs_times[i] - abs_times[i - 1]);
    }
    out.n_iets_all = all.size();
    out.b_all = burstiness(all);
  }

  const bool has_window = policy.inactive_length_hours() > 0.0;
  const auto hour_of = [](double abs_time) {
    return (abs_time - std::floor(abs_time)) * 24.0;
  };

  Iets active;
  double prev = -1.0;
  double prev_hour = 0.0;
  for (double t : abs_times) {
    const double h = hour_of(t);
    if (has_window && policy.is_inactive(h)) continue;
    if (prev >= 0.0) {
      const double gap_hours = (t - prev) * 24.0;
      bool crossed = false;
      if (has_window) {
        if (gap_hours >= 24.0) {
          crossed = true;  // every full day contains one window occurrence
        } else {
          // Walking forward from the previous event, do we pass the window's
          // start hour? Both endpoints are active, so touching the window at
          // all means passing that edge.
          double offset = policy.inactive_start_hour - prev_hour;
          if (offset <= 0.0) offset += 24.0;
          crossed = gap_hours > offset;
        }
      }
      if (!crossed) active.values.push_back(t - prev);
    }
    prev = t;
    prev_hour = h;
  }
  out.n_iets_active = active.size();
  if (active.size() < 2) {
    throw insufficient_data_error("too few active-time IETs for burstiness");
  }
  out.b_active = burstiness(active);
  return out;
}

}  // namespace ppgrow
