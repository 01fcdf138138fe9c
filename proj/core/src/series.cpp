#include "emostock/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "emostock/errors.hpp"
#include "emostock/io.hpp"

namespace emostock {

std::vector<Date> EmotionSeries::dates() const {
  std::vector<Date> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.date);
  return out;
}

std::vector<double> EmotionSeries::proportions(Emotion e) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.proportions[static_cast<int>(e)]);
  return out;
}

EmotionSeries aggregate_daily(const std::vector<ClassifiedTweet>& classified) {
  std::map<std::int64_t, std::array<std::int64_t, kEmotionCount>> by_day;
  for (const auto& ct : classified) {
    ++by_day[ct.tweet.date.serial()][static_cast<int>(ct.emotion)];
  }
  EmotionSeries series;
  series.rows.reserve(by_day.size());
  for (const auto& [serial, counts] : by_day) {
    DailyEmotionVector row;
    row.date = date_from_serial(serial);
    row.counts = counts;
    for (const auto c : counts) row.total += c;
    for (int e = 0; e < kEmotionCount; ++e) {
      row.proportions[e] =
          static_cast<double>(counts[e]) / static_cast<double>(row.total);
    }
    series.rows.push_back(row);
  }
  return series;
}

EmotionSeries restrict_to_calendar(const EmotionSeries& series, const TradingCalendar& cal) {
  EmotionSeries out;
  out.segment = series.segment;
  out.rows.reserve(series.rows.size());
  for (const auto& row : series.rows) {
    if (cal.contains(row.date)) out.rows.push_back(row);
  }
  return out;
}

LaggedSeries lag_series(std::span<const Date> dates, std::span<const double> values, int lag) {
  if (dates.size() != values.size()) {
    throw ArgumentError("lag_series: dates and values differ in length");
  }
  if (lag < 1) throw ArgumentError("lag_series: lag must be >= 1");
  if (static_cast<std::size_t>(lag) >= values.size()) {
    throw ArgumentError("lag_series: lag must be smaller than the series length");
  }
  LaggedSeries out;
  out.lag = lag;
  const std::size_t n = values.size();
  out.dates.assign(dates.begin() + lag, dates.end());
  out.values.assign(values.begin(), values.begin() + (n - lag));
  return out;
}

LaggedSeries lag_emotion(const EmotionSeries& series, Emotion e, int lag) {
  const auto d = series.dates();
  const auto v = series.proportions(e);
  return lag_series(d, v, lag);
}

std::vector<double> moving_average(std::span<const double> values, int window) {
  if (window < 1) throw ArgumentError("moving_average: window must be >= 1");
  if (static_cast<std::size_t>(window) > values.size()) {
    throw ArgumentError("moving_average: window exceeds series length");
  }
  std::vector<double> out;
  out.reserve(values.size() - window + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (i + 1 >= static_cast<std::size_t>(window)) {
      out.push_back(sum / window);
      sum -= values[i + 1 - window];
    }
  }
  return out;
}

std::pair<std::vector<double>, MinMaxBounds> minmax_fit_transform(
    std::span<const double> values) {
  if (values.size() < 2) throw ArgumentError("minmax: need at least 2 samples to fit");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) throw DegenerateError("minmax: series is constant, bounds degenerate");
  const MinMaxBounds bounds{*lo, *hi};
  return {minmax_apply(values, bounds), bounds};
}

std::vector<double> minmax_apply(std::span<const double> values, const MinMaxBounds& bounds) {
  if (!(bounds.max > bounds.min)) throw DegenerateError("minmax: invalid bounds");
  std::vector<double> out;
  out.reserve(values.size());
  const double span = bounds.max - bounds.min;
  for (const double v : values) out.push_back((v - bounds.min) / span);
  return out;
}

std::string emotion_series_to_csv(const EmotionSeries& series) {
  std::string out = "date,anger,disgust,joy,sadness,fear,total\n";
  char buf[64];
  for (const auto& row : series.rows) {
    out += to_string(row.date);
    for (int e = 0; e < kEmotionCount; ++e) {
      std::snprintf(buf, sizeof(buf), ",%.12g", row.proportions[e]);
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), ",%lld\n", static_cast<long long>(row.total));
    out += buf;
  }
  return out;
}

EmotionSeries parse_emotion_csv(const std::string& content, std::optional<Segment> segment) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "date,anger,disgust,joy,sadness,fear,total") {
    throw FormatError("emotion CSV: bad header '" + line + "'");
  }
  EmotionSeries series;
  series.segment = segment;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row_in(line);
    std::string field;
    DailyEmotionVector row;
    if (!std::getline(row_in, field, ',')) throw FormatError("emotion CSV: short row");
    row.date = parse_date(field);
    for (int e = 0; e < kEmotionCount; ++e) {
      if (!std::getline(row_in, field, ',')) throw FormatError("emotion CSV: short row");
      row.proportions[e] = std::stod(field);
    }
    if (!std::getline(row_in, field, ',')) throw FormatError("emotion CSV: short row");
    row.total = std::stoll(field);
    if (row.total <= 0) throw FormatError("emotion CSV: non-positive total");
    std::int64_t count_sum = 0;
    for (int e = 0; e < kEmotionCount; ++e) {
      row.counts[e] = std::llround(row.proportions[e] * static_cast<double>(row.total));
      count_sum += row.counts[e];
    }
    if (count_sum != row.total) {
      throw FormatError("emotion CSV: proportions inconsistent with total on " +
                        to_string(row.date));
    }
    if (!series.rows.empty() && !(series.rows.back().date < row.date)) {
      throw FormatError("emotion CSV: dates must be strictly increasing at " +
                        to_string(row.date));
    }
    series.rows.push_back(row);
  }
  return series;
}

EmotionSeries load_emotion_csv(const std::filesystem::path& path,
                               std::optional<Segment> segment) {
  return parse_emotion_csv(read_file(path), segment);
}

std::pair<EmotionSeries, EmotionSeries> split_by_date(const EmotionSeries& series,
                                                      const Date& boundary) {
  EmotionSeries train, test;
  train.segment = test.segment = series.segment;
  for (const auto& row : series.rows) {
    (row.date <= boundary ? train : test).rows.push_back(row);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace emostock
