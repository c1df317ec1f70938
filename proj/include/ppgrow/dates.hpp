#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ppgrow {

// Proleptic-Gregorian calendar date. All conversions below treat day numbers
// as days since 1970-01-01 (which may be negative) in a fixed-offset local
// clock: there is no DST anywhere in this library.
struct CivilDate {
  int year{1970};
  unsigned month{1};  // 1..12
  unsigned day{1};    // 1..31

  bool operator==(const CivilDate&) const = default;
};

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
[[nodiscard]] std::int64_t days_from_civil(const CivilDate& d);

[[nodiscard]] CivilDate civil_from_days(std::int64_t days);

// ISO weekday, 1 = Monday .. 7 = Sunday.
[[nodiscard]] int iso_weekday(std::int64_t days);

[[nodiscard]] const char* weekday_name(int iso_weekday);

// "YYYY-MM-DD".
[[nodiscard]] std::string format_date(const CivilDate& d);
[[nodiscard]] std::string format_date(std::int64_t days);

// Parses "YYYY-MM-DD"; returns nullopt on malformed or out-of-range input.
[[nodiscard]] std::optional<CivilDate> parse_iso_date(const std::string& text);

}  // namespace ppgrow
