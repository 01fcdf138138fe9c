#include "emostock/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "emostock/errors.hpp"
#include "emostock/io.hpp"
#include "emostock/market.hpp"
#include "emostock/rng.hpp"
#include "emostock/tweet.hpp"

namespace emostock {

namespace {

// 2015 Shanghai exchange closures falling on weekdays (New Year, Spring
// Festival, Qingming, Labour Day, Dragon Boat, Victory Day, National Day).
const std::array<const char*, 17> kHolidayClosures = {
    "2015-01-01", "2015-01-02", "2015-02-18", "2015-02-19", "2015-02-20", "2015-02-23",
    "2015-02-24", "2015-04-06", "2015-05-01", "2015-06-22", "2015-09-03", "2015-09-04",
    "2015-10-01", "2015-10-02", "2015-10-05", "2015-10-06", "2015-10-07"};

int pick_category(Rng& rng, std::span<const double> probs) {
  const double u = rng.next_unit();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

TradingCalendar weekday_trading_calendar(const Date& start, const Date& end) {
  if (end < start) throw ArgumentError("weekday_trading_calendar: end before start");
  std::vector<std::int64_t> closed;
  closed.reserve(kHolidayClosures.size());
  for (const char* s : kHolidayClosures) closed.push_back(parse_date(s).serial());

  std::vector<Date> days;
  for (std::int64_t s = start.serial(); s <= end.serial(); ++s) {
    const Date d = date_from_serial(s);
    if (d.is_weekend()) continue;
    if (std::find(closed.begin(), closed.end(), s) != closed.end()) continue;
    days.push_back(d);
  }
  return TradingCalendar(std::move(days));
}

SynthResult generate_fixture(const SynthParams& params, const std::filesystem::path& out_dir) {
  if (params.planted_lag < 1 || params.planted_lag > 5) {
    throw ArgumentError("synth: planted_lag must be in 1..5");
  }
  if (params.tweets_per_day < 1) throw ArgumentError("synth: tweets_per_day must be >= 1");
  std::filesystem::create_directories(out_dir);

  const TradingCalendar cal = weekday_trading_calendar(params.start, params.end);
  if (cal.size() < static_cast<std::size_t>(params.planted_lag) + 20) {
    throw ArgumentError("synth: period too short for the planted lag");
  }

  // Latent daily emotion proportions over every calendar day. Proportions
  // sum to one, so a planted swing must be absorbed somewhere; to keep the
  // other emotions statistically independent of the market the mix is built
  // from two fixed-mass blocks. Block A (half the mass) trades the planted
  // emotion against one designated complement; block B splits the other
  // half among the remaining three by independent mean-reverting weights,
  // so only the planted emotion and its complement carry the signal.
  const std::int64_t first = params.start.serial();
  const std::int64_t last = params.end.serial();
  const std::size_t n_days = static_cast<std::size_t>(last - first + 1);

  const int planted = static_cast<int>(params.planted_emotion);
  const Emotion complement_emotion = params.planted_emotion == Emotion::sadness
                                         ? Emotion::joy
                                         : Emotion::sadness;
  const int complement = static_cast<int>(complement_emotion);

  // The planted split is drawn fresh each day (no serial correlation), so
  // the market return built from it has white residuals once its own lags
  // are controlled for and the Granger F-test keeps its exact size on the
  // independent emotions. Block B keeps mild mean-reverting dynamics for
  // realistic-looking series; that is harmless because those emotions never
  // enter the return.
  Rng emotion_rng(derive_seed(params.seed, "synth/emotions"));
  std::vector<std::array<double, kEmotionCount>> latent(n_days);
  std::array<double, kEmotionCount> z{};
  constexpr double kPhi = 0.6;
  constexpr double kBlockMass = 0.5;
  constexpr double kAmplitude = 0.25;
  const double innovation = std::sqrt(1.0 - kPhi * kPhi);
  for (std::size_t d = 0; d < n_days; ++d) {
    const double split =
        std::clamp(0.5 + kAmplitude * emotion_rng.next_normal(), 0.08, 0.92);
    latent[d][planted] = kBlockMass * split;
    latent[d][complement] = kBlockMass * (1.0 - split);

    double total = 0.0;
    for (int e = 0; e < kEmotionCount; ++e) {
      if (e == planted || e == complement) continue;
      z[e] = kPhi * z[e] + innovation * emotion_rng.next_normal();
      latent[d][e] = std::exp(0.5 * z[e]);
      total += latent[d][e];
    }
    for (int e = 0; e < kEmotionCount; ++e) {
      if (e == planted || e == complement) continue;
      latent[d][e] *= (1.0 - kBlockMass) / total;
    }
  }

  // Planted signal: the latent proportion of the chosen emotion on trading
  // days, standardized over the whole period.
  std::vector<double> planted_on_cal(cal.size());
  for (std::size_t i = 0; i < cal.size(); ++i) {
    planted_on_cal[i] = latent[static_cast<std::size_t>(cal.days()[i].serial() - first)][planted];
  }
  double mean = 0.0;
  for (const double v : planted_on_cal) mean += v;
  mean /= static_cast<double>(planted_on_cal.size());
  double var = 0.0;
  for (const double v : planted_on_cal) var += (v - mean) * (v - mean);
  var /= static_cast<double>(planted_on_cal.size() - 1);
  const double sd = std::sqrt(std::max(var, 1e-300));

  // Market series: close return carries the coupling, open jitters around
  // the previous close, high/low bracket open/close, volume is independent.
  Rng market_rng(derive_seed(params.seed, "synth/market"));
  std::vector<MarketDay> days(cal.size());
  double close = 3000.0;
  for (std::size_t i = 0; i < cal.size(); ++i) {
    double rate = params.noise * market_rng.next_normal();
    if (i >= static_cast<std::size_t>(params.planted_lag)) {
      rate += params.coupling * (planted_on_cal[i - params.planted_lag] - mean) / sd;
    }
    const double prev_close = close;
    MarketDay& day = days[i];
    day.date = cal.days()[i];
    day.close = i == 0 ? close : prev_close * (1.0 + rate / 100.0);
    const double open_rate = 0.3 * rate + 0.05 * market_rng.next_normal();
    day.open = (i == 0 ? close : prev_close) * (1.0 + open_rate / 100.0);
    const double hi_pad = std::abs(market_rng.next_normal()) * 0.25 + 0.02;
    const double lo_pad = std::abs(market_rng.next_normal()) * 0.25 + 0.02;
    day.high = std::max(day.open, day.close) * (1.0 + hi_pad / 100.0);
    day.low = std::min(day.open, day.close) * (1.0 - lo_pad / 100.0);
    // Volume stays serially uncorrelated for the same size-exactness reason.
    day.volume = 2.0e8 * std::exp(0.25 * market_rng.next_normal());
    close = day.close;
  }

  // Tweets: every calendar day gets tweets_per_day posts whose emotion mix
  // follows the latent proportions; relevant ones embed a stock keyword.
  Rng tweet_rng(derive_seed(params.seed, "synth/tweets"));
  const KeywordSet keywords = KeywordSet::defaults();
  std::vector<TweetRecord> tweets;
  tweets.reserve(n_days * static_cast<std::size_t>(params.tweets_per_day));
  std::array<std::size_t, 3> flevel_counts{};
  std::size_t serial_id = 0;
  char ts_buf[40];
  for (std::size_t d = 0; d < n_days; ++d) {
    const Date date = date_from_serial(first + static_cast<std::int64_t>(d));
    for (int k = 0; k < params.tweets_per_day; ++k) {
      TweetRecord rec;
      rec.id = "t" + std::to_string(++serial_id);
      const int hh = 9 + static_cast<int>(tweet_rng.next_below(8));
      const int mm = static_cast<int>(tweet_rng.next_below(60));
      const int ss = static_cast<int>(tweet_rng.next_below(60));
      std::snprintf(ts_buf, sizeof(ts_buf), "%sT%02d:%02d:%02d+08:00",
                    to_string(date).c_str(), hh, mm, ss);
      rec.ts_raw = ts_buf;
      rec.date = date;

      const int level = pick_category(tweet_rng, params.flevel_probs);
      ++flevel_counts[static_cast<std::size_t>(level)];
      if (level == 0) {
        rec.followers = static_cast<std::int64_t>(tweet_rng.next_below(101));
      } else if (level == 1) {
        // log-uniform in (100, 10000)
        const double lo = std::log(101.0), hi = std::log(10000.0);
        rec.followers =
            static_cast<std::int64_t>(std::exp(lo + (hi - lo) * tweet_rng.next_unit()));
        rec.followers = std::clamp<std::int64_t>(rec.followers, 101, 9999);
      } else {
        const double lo = std::log(10000.0), hi = std::log(2.0e6);
        rec.followers =
            static_cast<std::int64_t>(std::exp(lo + (hi - lo) * tweet_rng.next_unit()));
      }
      const int gender = pick_category(tweet_rng, params.gender_probs);
      rec.gender = gender == 0 ? Gender::female : (gender == 1 ? Gender::male : Gender::unknown);

      const int emotion = pick_category(tweet_rng, latent[d]);
      const bool relevant = tweet_rng.next_unit() < params.relevant_fraction;
      std::string text;
      if (relevant) {
        text = keywords.keywords()[tweet_rng.next_below(keywords.keywords().size())];
      }
      const int n_tokens = 5 + static_cast<int>(tweet_rng.next_below(4));
      for (int w = 0; w < n_tokens; ++w) {
        if (!text.empty()) text += ' ';
        text += to_string(static_cast<Emotion>(emotion));
        text += 'w';
        text += std::to_string(tweet_rng.next_below(40));
      }
      rec.text = std::move(text);
      if (tweet_rng.next_unit() < params.labeled_fraction) {
        rec.label = static_cast<Emotion>(emotion);
      }
      tweets.push_back(std::move(rec));
    }
  }

  SynthResult result;
  result.n_tweets = tweets.size();
  result.n_trading_days = cal.size();
  result.tweets_path = out_dir / "tweets.jsonl";
  result.market_path = out_dir / "market.csv";
  result.truth_path = out_dir / "truth.json";
  result.config_path = out_dir / "config.json";

  atomic_write_file(result.tweets_path, tweets_to_jsonl(tweets));
  atomic_write_file(result.market_path, market_to_csv(days));

  nlohmann::ordered_json truth;
  truth["format_version"] = 1;
  truth["seed"] = params.seed;
  truth["period"] = {{"start", to_string(params.start)}, {"end", to_string(params.end)}};
  truth["planted"] = {{"emotion", std::string(to_string(params.planted_emotion))},
                      {"complement", std::string(to_string(complement_emotion))},
                      {"lag", params.planted_lag},
                      {"coupling", params.coupling},
                      {"noise", params.noise}};
  truth["tweets_per_day"] = params.tweets_per_day;
  truth["relevant_fraction"] = params.relevant_fraction;
  truth["labeled_fraction"] = params.labeled_fraction;
  truth["n_tweets"] = result.n_tweets;
  truth["n_trading_days"] = result.n_trading_days;
  truth["flevel_counts"] = flevel_counts;
  atomic_write_file(result.truth_path, truth.dump(2) + "\n");

  return result;
}

}  // namespace emostock
