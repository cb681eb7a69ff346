#include "boundary/calendar.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace boundary::calendar {
namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads 1..max_digits digits at pos.
std::optional<std::int64_t> read_number(std::string_view text, std::size_t& pos,
                                        std::size_t max_digits) {
  std::size_t start = pos;
  std::int64_t value = 0;
  while (pos < text.size() && is_digit(text[pos])) {
    if (pos - start == max_digits) return std::nullopt;
    value = value * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos == start) return std::nullopt;
  return value;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
  if (pos >= text.size() || text[pos] != c) return false;
  ++pos;
  return true;
}

std::optional<DateFields> lex_iso(std::string_view text) {
  std::size_t pos = 0;
  DateFields f;
  auto y = read_number(text, pos, 4);
  if (!y || !expect(text, pos, '-')) return std::nullopt;
  auto m = read_number(text, pos, 2);
  if (!m || !expect(text, pos, '-')) return std::nullopt;
  auto d = read_number(text, pos, 2);
  if (!d || pos != text.size()) return std::nullopt;
  f.year = *y;
  f.month = *m;
  f.day = *d;
  return f;
}

std::optional<DateFields> lex_slash(std::string_view text) {
  std::size_t pos = 0;
  DateFields f;
  auto m = read_number(text, pos, 2);
  if (!m || !expect(text, pos, '/')) return std::nullopt;
  auto d = read_number(text, pos, 2);
  if (!d || !expect(text, pos, '/')) return std::nullopt;
  auto y = read_number(text, pos, 4);
  if (!y || pos != text.size()) return std::nullopt;
  f.year = *y;
  f.month = *m;
  f.day = *d;
  return f;
}

std::optional<DateFields> lex_month_name(std::string_view text) {
  std::size_t pos = 0;
  DateFields f;
  auto d = read_number(text, pos, 2);
  if (!d || !expect(text, pos, ' ')) return std::nullopt;
  const std::size_t name_end = text.find(' ', pos);
  if (name_end == std::string_view::npos) return std::nullopt;
  const std::string_view name = text.substr(pos, name_end - pos);
  const auto it = std::find(kMonthNames.begin(), kMonthNames.end(), name);
  if (it == kMonthNames.end()) return std::nullopt;
  pos = name_end + 1;
  auto y = read_number(text, pos, 4);
  if (!y || pos != text.size()) return std::nullopt;
  f.year = *y;
  f.month = (it - kMonthNames.begin()) + 1;
  f.day = *d;
  return f;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::string_view to_string(DateFormat format) {
  switch (format) {
    case DateFormat::iso: return "iso";
    case DateFormat::day_month_name: return "day_month_name";
    case DateFormat::month_day_year: return "month_day_year";
  }
  return "iso";
}

std::optional<DateFormat> parse_format(std::string_view name) {
  if (name == "iso") return DateFormat::iso;
  if (name == "day_month_name") return DateFormat::day_month_name;
  if (name == "month_day_year") return DateFormat::month_day_year;
  return std::nullopt;
}

bool is_leap(std::int64_t year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(std::int64_t year, std::int64_t month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return kDays[static_cast<std::size_t>(month - 1)];
}

// Howard Hinnant's civil-to-days algorithm.
std::int64_t days_from_civil(std::int64_t y, std::int64_t m, std::int64_t d) {
  y -= m <= 2;
  const std::int64_t era = floor_div(y, 400);
  const std::int64_t yoe = y - era * 400;
  const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

std::optional<DateFields> lex(std::string_view text, std::span<const DateFormat> formats) {
  for (DateFormat format : formats) {
    std::optional<DateFields> fields;
    switch (format) {
      case DateFormat::iso: fields = lex_iso(text); break;
      case DateFormat::day_month_name: fields = lex_month_name(text); break;
      case DateFormat::month_day_year: fields = lex_slash(text); break;
    }
    if (fields) return fields;
  }
  return std::nullopt;
}

bool is_valid(const DateFields& f) {
  if (f.year < 0 || f.year > 9999) return false;
  if (f.month < 1 || f.month > 12) return false;
  return f.day >= 1 && f.day <= days_in_month(f.year, f.month);
}

std::int64_t normalized_day_number(const DateFields& f) {
  const std::int64_t month0 = f.month - 1;
  const std::int64_t year = f.year + floor_div(month0, 12);
  const std::int64_t month = month0 - floor_div(month0, 12) * 12 + 1;
  return days_from_civil(year, month, 1) + (f.day - 1);
}

std::string format(const DateFields& f, DateFormat format) {
  char buffer[64];
  switch (format) {
    case DateFormat::iso:
      std::snprintf(buffer, sizeof buffer, "%04lld-%02lld-%02lld",
                    static_cast<long long>(f.year), static_cast<long long>(f.month),
                    static_cast<long long>(f.day));
      break;
    case DateFormat::day_month_name:
      std::snprintf(buffer, sizeof buffer, "%lld %s %04lld", static_cast<long long>(f.day),
                    kMonthNames[static_cast<std::size_t>(f.month - 1)].data(),
                    static_cast<long long>(f.year));
      break;
    case DateFormat::month_day_year:
      std::snprintf(buffer, sizeof buffer, "%02lld/%02lld/%04lld",
                    static_cast<long long>(f.month), static_cast<long long>(f.day),
                    static_cast<long long>(f.year));
      break;
  }
  return buffer;
}

const std::vector<DateFormat>& default_formats() {
  static const std::vector<DateFormat> kDefault = {DateFormat::iso};
  return kDefault;
}

}  // namespace boundary::calendar
