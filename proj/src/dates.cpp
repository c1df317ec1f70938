#include "ppgrow/dates.hpp"

#include <array>
#include <cstdio>

namespace ppgrow {

std::int64_t days_from_civil(const CivilDate& d) {
  std::int64_t y = d.year;
  const unsigned m = d.month;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;  // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t days) {
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned day = doy - (153 * mp + 2) / 5 + 1;
  const unsigned month = mp + (mp < 10 ? 3 : -9);
  return CivilDate{static_cast<int>(y + (month <= 2)), month, day};
}

int iso_weekday(std::int64_t days) {
  // 1970-01-01 was a Thursday (ISO weekday 4).
  return static_cast<int>(((days % 7) + 10) % 7) + 1;
}

const char* weekday_name(int iso_weekday) {
  static constexpr std::array<const char*, 8> kNames = {
      "?", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
  if (iso_weekday < 1 || iso_weekday > 7) return kNames[0];
  return kNames[static_cast<std::size_t>(iso_weekday)];
}

std::string format_date(const CivilDate& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

std::string format_date(std::int64_t days) { return format_date(civil_from_days(days)); }

std::optional<CivilDate> parse_iso_date(const std::string& text) {
  int y = 0;
  unsigned m = 0, d = 0;
  char trail = 0;
  if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &trail) != 3) return std::nullopt;
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  CivilDate date{y, m, d};
  // Round-trip to reject impossible dates such as Feb 30.
  if (civil_from_days(days_from_civil(date)) != date) return std::nullopt;
  return date;
}

}  // namespace ppgrow
