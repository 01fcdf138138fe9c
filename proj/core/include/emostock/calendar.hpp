#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace emostock {

/// Calendar date. Aggregation throughout the pipeline is keyed on UTC+8
/// civil dates, so this is a plain date with no time-of-day or zone state.
struct Date {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  /// Days since 1970-01-01 (may be negative).
  std::int64_t serial() const;
  /// 0 = Monday .. 6 = Sunday.
  int weekday() const;
  bool is_weekend() const { return weekday() >= 5; }

  friend bool operator==(const Date&, const Date&) = default;
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
    return a.serial() <=> b.serial();
  }
};

Date date_from_serial(std::int64_t days_since_epoch);

/// Parses "YYYY-MM-DD". Throws FormatError on malformed or invalid dates.
Date parse_date(std::string_view text);

/// "YYYY-MM-DD".
std::string to_string(const Date& d);

/// Parses an ISO-8601 date-time ("2015-06-19T09:31:00+08:00", trailing "Z",
/// or a naive "2015-06-19 09:31:00" treated as UTC+8) and returns the UTC+8
/// civil date of that instant.
Date parse_timestamp_utc8(std::string_view text);

/// The ordered set of market trading days; derived solely from market data.
class TradingCalendar {
 public:
  TradingCalendar() = default;
  /// Days must be strictly increasing; throws ValidationError otherwise.
  explicit TradingCalendar(std::vector<Date> days);

  const std::vector<Date>& days() const { return days_; }
  std::size_t size() const { return days_.size(); }
  bool empty() const { return days_.empty(); }
  bool contains(const Date& d) const;
  /// Position of d, or -1 when d is not a trading day.
  std::int64_t index_of(const Date& d) const;

 private:
  std::vector<Date> days_;
};

}  // namespace emostock
