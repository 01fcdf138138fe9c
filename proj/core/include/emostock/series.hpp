#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "emostock/calendar.hpp"
#include "emostock/emotion.hpp"
#include "emostock/segment.hpp"
#include "emostock/tweet.hpp"

namespace emostock {

/// One day's emotion tally. proportions[e] = counts[e] / total, so a row
/// always sums to 1 within 1e-12.
struct DailyEmotionVector {
  Date date;
  std::array<std::int64_t, kEmotionCount> counts{};
  std::array<double, kEmotionCount> proportions{};
  std::int64_t total = 0;
};

struct ClassifiedTweet {
  TweetRecord tweet;
  Emotion emotion;
};

/// Date-ordered daily emotion proportions, optionally tagged with the
/// investor segment it was built from. Immutable by convention once built.
struct EmotionSeries {
  std::vector<DailyEmotionVector> rows;
  std::optional<Segment> segment;

  std::vector<Date> dates() const;
  /// One emotion's proportion column.
  std::vector<double> proportions(Emotion e) const;
};

/// Groups classified tweets by UTC+8 civil date; one row per date with at
/// least one tweet, rows sorted ascending.
EmotionSeries aggregate_daily(const std::vector<ClassifiedTweet>& classified);

/// Keeps only rows whose date is a trading day. An empty result from
/// non-empty inputs is legal (the caller may warn); it is never an error.
EmotionSeries restrict_to_calendar(const EmotionSeries& series, const TradingCalendar& cal);

/// A series shifted earlier by a whole number of rows (trading-day lags).
/// values[i] is the source value `lag` rows before dates[i].
struct LaggedSeries {
  int lag = 0;
  std::vector<Date> dates;
  std::vector<double> values;
};

/// Requires 1 <= lag < size (ArgumentError otherwise). The first `lag` rows
/// drop out of the aligned output.
LaggedSeries lag_series(std::span<const Date> dates, std::span<const double> values, int lag);

LaggedSeries lag_emotion(const EmotionSeries& series, Emotion e, int lag);

/// Trailing mean over `window` samples; output length = n - window + 1.
/// window must be in [1, n] (ArgumentError otherwise).
std::vector<double> moving_average(std::span<const double> values, int window);

struct MinMaxBounds {
  double min = 0.0;
  double max = 1.0;
};

/// Fits bounds on `values` (training mode) and rescales to [0, 1].
/// Throws DegenerateError when max == min, ArgumentError when n < 2.
std::pair<std::vector<double>, MinMaxBounds> minmax_fit_transform(std::span<const double> values);

/// Applies previously fitted bounds; outputs may fall outside [0, 1].
std::vector<double> minmax_apply(std::span<const double> values, const MinMaxBounds& bounds);

/// CSV schema: date,anger,disgust,joy,sadness,fear,total with proportions at
/// 12 significant digits.
std::string emotion_series_to_csv(const EmotionSeries& series);
EmotionSeries parse_emotion_csv(const std::string& content,
                                std::optional<Segment> segment = std::nullopt);
EmotionSeries load_emotion_csv(const std::filesystem::path& path,
                               std::optional<Segment> segment = std::nullopt);

/// Rows with date <= boundary go left, the rest right.
std::pair<EmotionSeries, EmotionSeries> split_by_date(const EmotionSeries& series,
                                                      const Date& boundary);

}  // namespace emostock
