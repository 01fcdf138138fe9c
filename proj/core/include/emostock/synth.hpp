#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "emostock/calendar.hpp"
#include "emostock/emotion.hpp"

namespace emostock {

/// Weekday trading calendar between two dates minus the fixed exchange
/// closure list for the default study period (which yields exactly 249
/// sessions between 2014-12-01 and 2015-12-07).
TradingCalendar weekday_trading_calendar(const Date& start, const Date& end);

/// Parameters of the synthetic fixture generator. The generated market
/// close return is coupled to one emotion at a chosen trading-day lag:
///   r_t = coupling * standardized(x_{e*, t-lag}) + noise * eps_t  (percent),
/// which gives the pipeline a known ground truth to recover.
struct SynthParams {
  Date start{2014, 12, 1};
  Date end{2015, 12, 7};
  int tweets_per_day = 400;
  double relevant_fraction = 0.7;  // tweets carrying a stock keyword
  double labeled_fraction = 0.3;   // tweets carrying an emoticon-derived label
  Emotion planted_emotion = Emotion::joy;
  int planted_lag = 2;      // trading-day lag of the coupling
  double coupling = 0.8;    // percent move per sd of the planted emotion
  double noise = 0.1;       // percent sd of the idiosyncratic return noise
  std::uint64_t seed = 42;

  // Follower-tier mix mirroring the observed distribution (bottom 53.5%,
  // middle 45%, top 1.5%) and the roughly 40/60 female/male split.
  std::array<double, 3> flevel_probs{0.535, 0.45, 0.015};
  std::array<double, 3> gender_probs{0.40, 0.58, 0.02};  // f, m, u
};

struct SynthResult {
  std::filesystem::path tweets_path;
  std::filesystem::path market_path;
  std::filesystem::path truth_path;
  std::filesystem::path config_path;
  std::size_t n_tweets = 0;
  std::size_t n_trading_days = 0;
};

/// Writes tweets.jsonl, market.csv, the ground-truth manifest truth.json and
/// a ready-to-run config.json into out_dir.
SynthResult generate_fixture(const SynthParams& params, const std::filesystem::path& out_dir);

}  // namespace emostock
