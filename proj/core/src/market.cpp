#include "emostock/market.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "emostock/errors.hpp"
#include "emostock/io.hpp"

namespace emostock {

namespace {

double parse_positive(const std::string& field, const char* what, const Date& date) {
  double v = 0.0;
  try {
    std::size_t pos = 0;
    v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
  } catch (const std::exception&) {
    throw FormatError(std::string("market CSV: bad ") + what + " value '" + field +
                      "' on " + to_string(date));
  }
  if (!(v > 0.0)) {
    throw ValidationError(std::string("market CSV: ") + what + " must be positive on " +
                          to_string(date));
  }
  return v;
}

void validate_day(const MarketDay& d) {
  if (d.low > std::min(d.open, d.close)) {
    throw ValidationError("market CSV: low above open/close on " + to_string(d.date));
  }
  if (d.high < std::max(d.open, d.close)) {
    throw ValidationError("market CSV: high below open/close on " + to_string(d.date));
  }
}

}  // namespace

MarketData parse_market_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "date,open,high,low,close,volume") {
    throw FormatError("market CSV: bad header '" + line + "'");
  }
  MarketData data;
  std::vector<Date> dates;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row_in(line);
    std::string field;
    MarketDay day;
    if (!std::getline(row_in, field, ',')) throw FormatError("market CSV: short row");
    day.date = parse_date(field);
    double* const cols[] = {&day.open, &day.high, &day.low, &day.close, &day.volume};
    const char* const names[] = {"open", "high", "low", "close", "volume"};
    for (int i = 0; i < 5; ++i) {
      if (!std::getline(row_in, field, ',')) {
        throw FormatError("market CSV: short row on " + to_string(day.date));
      }
      *cols[i] = parse_positive(field, names[i], day.date);
    }
    validate_day(day);
    if (!data.days.empty() && !(data.days.back().date < day.date)) {
      throw FormatError("market CSV: dates must be strictly ascending at " +
                        to_string(day.date));
    }
    data.days.push_back(day);
    dates.push_back(day.date);
  }
  data.calendar = TradingCalendar(std::move(dates));
  return data;
}

MarketData load_market_csv(const std::filesystem::path& path) {
  return parse_market_csv(read_file(path));
}

std::string market_to_csv(std::span<const MarketDay> days) {
  std::string out = "date,open,high,low,close,volume\n";
  char buf[160];
  for (const auto& d : days) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  to_string(d.date).c_str(), d.open, d.high, d.low, d.close, d.volume);
    out += buf;
  }
  return out;
}

std::optional<MktTarget> target_from_string(std::string_view s) {
  for (const MktTarget t : kAllTargets) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

const std::vector<double>& TargetSeries::column(MktTarget t) const {
  switch (t) {
    case MktTarget::close: return close_r;
    case MktTarget::open: return open_r;
    case MktTarget::high: return high_r;
    case MktTarget::low: return low_r;
    case MktTarget::volume: return volume;
  }
  throw ArgumentError("TargetSeries::column: bad target");
}

TargetSeries rate_of_change_targets(std::span<const MarketDay> days) {
  if (days.size() < 2) throw ArgumentError("rate_of_change_targets: need at least 2 days");
  TargetSeries t;
  const std::size_t n = days.size();
  t.dates.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double prev_close = days[i - 1].close;
    if (!(prev_close > 0.0)) {
      throw ValidationError("rate_of_change_targets: non-positive previous close before " +
                            to_string(days[i].date));
    }
    t.dates.push_back(days[i].date);
    t.close_r.push_back((days[i].close - prev_close) / prev_close * 100.0);
    t.open_r.push_back((days[i].open - prev_close) / prev_close * 100.0);
    t.high_r.push_back((days[i].high - prev_close) / prev_close * 100.0);
    t.low_r.push_back((days[i].low - prev_close) / prev_close * 100.0);
    t.volume.push_back(days[i].volume);
  }
  return t;
}

std::string targets_to_csv(const TargetSeries& t) {
  std::string out = "date,close_r,open_r,high_r,low_r,volume\n";
  char buf[200];
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  to_string(t.dates[i]).c_str(), t.close_r[i], t.open_r[i], t.high_r[i],
                  t.low_r[i], t.volume[i]);
    out += buf;
  }
  return out;
}

TargetSeries parse_targets_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "date,close_r,open_r,high_r,low_r,volume") {
    throw FormatError("targets CSV: bad header '" + line + "'");
  }
  TargetSeries t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row_in(line);
    std::string field;
    if (!std::getline(row_in, field, ',')) throw FormatError("targets CSV: short row");
    const Date date = parse_date(field);
    double values[5];
    for (int i = 0; i < 5; ++i) {
      if (!std::getline(row_in, field, ',')) throw FormatError("targets CSV: short row");
      values[i] = std::stod(field);
    }
    if (!t.dates.empty() && !(t.dates.back() < date)) {
      throw FormatError("targets CSV: dates must be strictly ascending at " + to_string(date));
    }
    t.dates.push_back(date);
    t.close_r.push_back(values[0]);
    t.open_r.push_back(values[1]);
    t.high_r.push_back(values[2]);
    t.low_r.push_back(values[3]);
    t.volume.push_back(values[4]);
  }
  return t;
}

TargetSeries load_targets_csv(const std::filesystem::path& path) {
  return parse_targets_csv(read_file(path));
}

std::pair<TargetSeries, TargetSeries> split_by_date(const TargetSeries& t, const Date& boundary) {
  TargetSeries train, test;
  for (std::size_t i = 0; i < t.size(); ++i) {
    TargetSeries& side = t.dates[i] <= boundary ? train : test;
    side.dates.push_back(t.dates[i]);
    side.close_r.push_back(t.close_r[i]);
    side.open_r.push_back(t.open_r[i]);
    side.high_r.push_back(t.high_r[i]);
    side.low_r.push_back(t.low_r[i]);
    side.volume.push_back(t.volume[i]);
  }
  return {std::move(train), std::move(test)};
}

std::pair<std::vector<MarketDay>, std::vector<MarketDay>> split_by_date(
    std::span<const MarketDay> days, const Date& boundary) {
  std::vector<MarketDay> train, test;
  for (const auto& d : days) {
    (d.date <= boundary ? train : test).push_back(d);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace emostock
