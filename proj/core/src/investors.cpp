#include "emostock/investors.hpp"

#include <cmath>

#include "emostock/errors.hpp"

namespace emostock {

std::vector<Segment> assign_segments(const TweetRecord& record,
                                     const SegmentThresholds& thresholds) {
  std::vector<Segment> out;
  out.reserve(3);
  if (record.followers <= thresholds.low) {
    out.push_back(Segment::flevel_1);
  } else if (record.followers < thresholds.high) {
    out.push_back(Segment::flevel_2);
  } else {
    out.push_back(Segment::flevel_3);
  }
  if (record.gender == Gender::female) out.push_back(Segment::female);
  if (record.gender == Gender::male) out.push_back(Segment::male);
  out.push_back(Segment::all);
  return out;
}

bool in_segment(const TweetRecord& record, Segment segment,
                const SegmentThresholds& thresholds) {
  switch (segment) {
    case Segment::all: return true;
    case Segment::flevel_1: return record.followers <= thresholds.low;
    case Segment::flevel_2:
      return record.followers > thresholds.low && record.followers < thresholds.high;
    case Segment::flevel_3: return record.followers >= thresholds.high;
    case Segment::female: return record.gender == Gender::female;
    case Segment::male: return record.gender == Gender::male;
  }
  return false;
}

RjfSeries compute_rjf(const EmotionSeries& series) {
  RjfSeries out;
  for (const auto& row : series.rows) {
    const double joy = row.proportions[static_cast<int>(Emotion::joy)];
    const double fear = row.proportions[static_cast<int>(Emotion::fear)];
    if (fear > 0.0) {
      out.dates.push_back(row.date);
      out.rjf.push_back(joy / fear);
    } else {
      ++out.excluded_zero_fear;
    }
  }
  return out;
}

VolatilityReport volatility(std::span<const double> r) {
  if (r.size() < 2) throw ArgumentError("volatility: need at least 2 samples");
  VolatilityReport rep;
  rep.n = r.size();
  double sum = 0.0;
  bool all_equal = true;
  for (const double v : r) {
    sum += v;
    all_equal = all_equal && v == r[0];
  }
  rep.mu = sum / static_cast<double>(r.size());
  if (all_equal) {
    // sigma must be exactly zero for a constant series; the accumulated
    // mean can be one ulp off the common value.
    rep.mu = r[0];
    rep.sigma = 0.0;
    return rep;
  }
  double ss = 0.0;
  for (const double v : r) ss += (v - rep.mu) * (v - rep.mu);
  rep.sigma = std::sqrt(ss / static_cast<double>(r.size() - 1));
  return rep;
}

std::vector<std::pair<Date, double>> rolling_volatility(const RjfSeries& r, int window) {
  if (window < 2) throw ArgumentError("rolling_volatility: window must be >= 2");
  if (r.rjf.size() < static_cast<std::size_t>(window)) {
    throw ArgumentError("rolling_volatility: series shorter than window");
  }
  std::vector<std::pair<Date, double>> out;
  const std::size_t n = r.rjf.size();
  out.reserve(n - window + 1);
  for (std::size_t end = window; end <= n; ++end) {
    const std::span<const double> slice(r.rjf.data() + (end - window),
                                        static_cast<std::size_t>(window));
    out.emplace_back(r.dates[end - 1], volatility(slice).sigma);
  }
  return out;
}

}  // namespace emostock
