#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "emostock/segment.hpp"
#include "emostock/series.hpp"
#include "emostock/tweet.hpp"

namespace emostock {

/// Follower-count tier boundaries. The tiers partition [0, inf):
/// flevel_1 = [0, low], flevel_2 = (low, high), flevel_3 = [high, inf).
struct SegmentThresholds {
  std::int64_t low = 100;
  std::int64_t high = 10000;
};

/// Exactly one F-level, plus the gender segment when known, plus `all`.
std::vector<Segment> assign_segments(const TweetRecord& record,
                                     const SegmentThresholds& thresholds = {});

bool in_segment(const TweetRecord& record, Segment segment,
                const SegmentThresholds& thresholds = {});

/// Daily ratio of joy to fear, RJF_t = X_joy,t / X_fear,t. Days with zero
/// fear are excluded (and counted) rather than producing infinities.
struct RjfSeries {
  std::vector<Date> dates;
  std::vector<double> rjf;
  std::size_t excluded_zero_fear = 0;
};

RjfSeries compute_rjf(const EmotionSeries& series);

/// Emotional volatility: mu is the mean of R_t and sigma the sample standard
/// deviation with the N-1 denominator.
struct VolatilityReport {
  double mu = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
};

/// Requires n >= 2 (ArgumentError otherwise).
VolatilityReport volatility(std::span<const double> r);

/// Sigma over each trailing window of `window` rows; requires window >= 2
/// and length >= window.
std::vector<std::pair<Date, double>> rolling_volatility(const RjfSeries& r, int window);

}  // namespace emostock
