#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emostock/calendar.hpp"

namespace emostock {

/// One trading day of index data. Invariants: all prices positive,
/// low <= min(open, close), high >= max(open, close), volume > 0.
struct MarketDay {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double volume = 0.0;
};

struct MarketData {
  std::vector<MarketDay> days;
  TradingCalendar calendar;  // exactly the row dates
};

/// Header must be `date,open,high,low,close,volume`, rows date-ascending.
/// Rows violating the MarketDay invariants raise ValidationError naming the
/// date; structural problems raise FormatError.
MarketData parse_market_csv(const std::string& content);
MarketData load_market_csv(const std::filesystem::path& path);
std::string market_to_csv(std::span<const MarketDay> days);

/// Market prediction target.
enum class MktTarget : int { close = 0, open = 1, high = 2, low = 3, volume = 4 };

inline constexpr std::array<MktTarget, 5> kAllTargets = {
    MktTarget::close, MktTarget::open, MktTarget::high, MktTarget::low, MktTarget::volume};

constexpr std::string_view to_string(MktTarget t) {
  switch (t) {
    case MktTarget::close: return "close";
    case MktTarget::open: return "open";
    case MktTarget::high: return "high";
    case MktTarget::low: return "low";
    case MktTarget::volume: return "volume";
  }
  return "?";
}

std::optional<MktTarget> target_from_string(std::string_view s);

/// The five daily target series. The four price columns hold the percent
/// rate of change against the previous close,
///   close_r[i] = (close_i - close_{i-1}) / close_{i-1} * 100,
/// and likewise open_r/high_r/low_r; volume passes through untransformed.
/// The first market day has no previous close and yields no row.
struct TargetSeries {
  std::vector<Date> dates;
  std::vector<double> close_r, open_r, high_r, low_r, volume;

  std::size_t size() const { return dates.size(); }
  const std::vector<double>& column(MktTarget t) const;
};

/// Requires >= 2 days; throws ValidationError when a previous close is not
/// positive.
TargetSeries rate_of_change_targets(std::span<const MarketDay> days);

std::string targets_to_csv(const TargetSeries& t);
TargetSeries parse_targets_csv(const std::string& content);
TargetSeries load_targets_csv(const std::filesystem::path& path);

/// Chronological split: rows dated <= boundary go to train.
std::pair<TargetSeries, TargetSeries> split_by_date(const TargetSeries& t, const Date& boundary);
std::pair<std::vector<MarketDay>, std::vector<MarketDay>> split_by_date(
    std::span<const MarketDay> days, const Date& boundary);

}  // namespace emostock
