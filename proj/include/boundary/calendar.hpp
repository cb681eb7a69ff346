#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boundary::calendar {

/// Accepted textual layouts.
///   iso             Y-M-D    with 1-4 digit year, 1-2 digit month and day
///   day_month_name  D Month Y, English month name, e.g. "7 March 2020"
///   month_day_year  M/D/Y
enum class DateFormat { iso, day_month_name, month_day_year };

std::string_view to_string(DateFormat format);
std::optional<DateFormat> parse_format(std::string_view name);

/// Numeric fields as written. Month and day are not range checked.
struct DateFields {
  std::int64_t year = 0;
  std::int64_t month = 0;
  std::int64_t day = 0;
  friend bool operator==(const DateFields&, const DateFields&) = default;
};

bool is_leap(std::int64_t year);
int days_in_month(std::int64_t year, std::int64_t month);

/// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(std::int64_t year, std::int64_t month, std::int64_t day);

/// Splits text into fields if it has the shape of one of `formats`.
std::optional<DateFields> lex(std::string_view text, std::span<const DateFormat> formats);

/// Year in [0, 9999], month in [1, 12], day within the month.
bool is_valid(const DateFields& fields);

/// Day number that matches days_from_civil for real dates and extends it to
/// out-of-range months and days by carrying (month 13 is January of the next
/// year, day 0 the last day of the previous month).
std::int64_t normalized_day_number(const DateFields& fields);

std::string format(const DateFields& fields, DateFormat format);

const std::vector<DateFormat>& default_formats();

}  // namespace boundary::calendar
