#include "emostock/calendar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "emostock/errors.hpp"

namespace emostock {

namespace {

// Howard Hinnant's civil-from-days / days-from-civil algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[m - 1];
}

int parse_int_field(std::string_view text, std::size_t pos, std::size_t len) {
  int value = 0;
  const auto* first = text.data() + pos;
  const auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc{} || ptr != first + len) {
    throw FormatError("invalid numeric field in date/time: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::int64_t Date::serial() const { return days_from_civil(year, month, day); }

int Date::weekday() const {
  // 1970-01-01 was a Thursday.
  const std::int64_t s = serial();
  return static_cast<int>(((s % 7) + 7 + 3) % 7);
}

Date date_from_serial(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw FormatError("expected YYYY-MM-DD date, got '" + std::string(text) + "'");
  }
  Date d;
  d.year = parse_int_field(text, 0, 4);
  d.month = parse_int_field(text, 5, 2);
  d.day = parse_int_field(text, 8, 2);
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
    throw FormatError("invalid calendar date '" + std::string(text) + "'");
  }
  return d;
}

std::string to_string(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

Date parse_timestamp_utc8(std::string_view text) {
  if (text.size() < 10) throw FormatError("timestamp too short: '" + std::string(text) + "'");
  const Date date_part = parse_date(text.substr(0, 10));
  std::int64_t seconds_of_day = 0;
  std::int64_t offset_seconds = 8 * 3600;  // naive timestamps are already UTC+8

  if (text.size() > 10) {
    if (text[10] != 'T' && text[10] != ' ') {
      throw FormatError("expected 'T' or ' ' after date in '" + std::string(text) + "'");
    }
    if (text.size() < 19 || text[13] != ':' || text[16] != ':') {
      throw FormatError("expected hh:mm:ss in '" + std::string(text) + "'");
    }
    const int hh = parse_int_field(text, 11, 2);
    const int mm = parse_int_field(text, 14, 2);
    const int ss = parse_int_field(text, 17, 2);
    if (hh > 23 || mm > 59 || ss > 60) {
      throw FormatError("invalid time of day in '" + std::string(text) + "'");
    }
    seconds_of_day = hh * 3600 + mm * 60 + ss;

    std::string_view rest = text.substr(19);
    // Optional fractional seconds, then optional zone designator.
    if (!rest.empty() && rest[0] == '.') {
      std::size_t i = 1;
      while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
      if (i == 1) throw FormatError("empty fractional seconds in '" + std::string(text) + "'");
      rest = rest.substr(i);
    }
    if (!rest.empty()) {
      if (rest == "Z") {
        offset_seconds = 0;
      } else if ((rest[0] == '+' || rest[0] == '-') &&
                 (rest.size() == 3 || (rest.size() == 6 && rest[3] == ':'))) {
        const int oh = parse_int_field(rest, 1, 2);
        const int om = rest.size() == 6 ? parse_int_field(rest, 4, 2) : 0;
        offset_seconds = (rest[0] == '-' ? -1 : 1) * (oh * 3600 + om * 60);
      } else {
        throw FormatError("invalid zone designator in '" + std::string(text) + "'");
      }
    }
  }

  const std::int64_t epoch_seconds =
      date_part.serial() * 86400 + seconds_of_day - offset_seconds;
  std::int64_t utc8 = epoch_seconds + 8 * 3600;
  // Floor division toward -infinity for pre-epoch instants.
  std::int64_t days = utc8 / 86400;
  if (utc8 % 86400 < 0) --days;
  return date_from_serial(days);
}

TradingCalendar::TradingCalendar(std::vector<Date> days) : days_(std::move(days)) {
  for (std::size_t i = 1; i < days_.size(); ++i) {
    if (!(days_[i - 1] < days_[i])) {
      throw ValidationError("trading calendar dates must be strictly increasing at " +
                            to_string(days_[i]));
    }
  }
}

bool TradingCalendar::contains(const Date& d) const { return index_of(d) >= 0; }

std::int64_t TradingCalendar::index_of(const Date& d) const {
  const auto it = std::lower_bound(days_.begin(), days_.end(), d);
  if (it == days_.end() || !(*it == d)) return -1;
  return it - days_.begin();
}

}  // namespace emostock
