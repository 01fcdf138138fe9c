#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emostock/errors.hpp"
#include "emostock/rng.hpp"
#include "emostock/series.hpp"
#include "emostock/synth.hpp"

using namespace emostock;

namespace {

ClassifiedTweet classified(const Date& date, Emotion e) {
  ClassifiedTweet ct;
  ct.tweet.id = "x";
  ct.tweet.date = date;
  ct.tweet.text = "t";
  ct.emotion = e;
  return ct;
}

EmotionSeries random_series(std::size_t n_days, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ClassifiedTweet> tweets;
  for (std::size_t d = 0; d < n_days; ++d) {
    const Date date = date_from_serial(16436 + static_cast<std::int64_t>(d));
    const int count = 1 + static_cast<int>(rng.next_below(8));
    for (int i = 0; i < count; ++i) {
      tweets.push_back(classified(date, static_cast<Emotion>(rng.next_below(5))));
    }
  }
  return aggregate_daily(tweets);
}

}  // namespace

TEST_CASE("aggregate_daily computes per-day proportions") {
  const Date d{2015, 6, 1};
  std::vector<ClassifiedTweet> tweets = {classified(d, Emotion::joy),
                                         classified(d, Emotion::joy),
                                         classified(d, Emotion::joy),
                                         classified(d, Emotion::fear)};
  const auto series = aggregate_daily(tweets);
  REQUIRE(series.rows.size() == 1);
  const auto& row = series.rows[0];
  CHECK(row.total == 4);
  CHECK(row.proportions == std::array<double, 5>{0.0, 0.0, 0.75, 0.0, 0.25});

  SUBCASE("one of each label is uniform") {
    std::vector<ClassifiedTweet> balanced;
    for (const Emotion e : kAllEmotions) balanced.push_back(classified(d, e));
    const auto s = aggregate_daily(balanced);
    for (const double p : s.rows[0].proportions) CHECK(p == doctest::Approx(0.2));
  }
  SUBCASE("empty input gives an empty series") {
    CHECK(aggregate_daily({}).rows.empty());
  }
  SUBCASE("rows are date-ordered regardless of input order") {
    std::vector<ClassifiedTweet> shuffled = {classified(Date{2015, 6, 3}, Emotion::joy),
                                             classified(Date{2015, 6, 1}, Emotion::fear),
                                             classified(Date{2015, 6, 2}, Emotion::anger)};
    const auto s = aggregate_daily(shuffled);
    REQUIRE(s.rows.size() == 3);
    CHECK(s.rows[0].date < s.rows[1].date);
    CHECK(s.rows[1].date < s.rows[2].date);
  }
}

TEST_CASE("proportion rows sum to one and stay in [0,1]") {
  const auto series = random_series(60, 9);
  for (const auto& row : series.rows) {
    double sum = 0.0;
    std::int64_t count_sum = 0;
    for (int e = 0; e < kEmotionCount; ++e) {
      CHECK(row.proportions[e] >= 0.0);
      CHECK(row.proportions[e] <= 1.0);
      sum += row.proportions[e];
      count_sum += row.counts[e];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(count_sum == row.total);
  }
}

TEST_CASE("restrict_to_calendar") {
  // Mon 2015-06-01 .. Sun 2015-06-07; trading days are the weekdays.
  std::vector<ClassifiedTweet> tweets;
  for (int day = 1; day <= 7; ++day) {
    tweets.push_back(classified(Date{2015, 6, day}, Emotion::joy));
  }
  const auto series = aggregate_daily(tweets);
  std::vector<Date> weekdays;
  for (int day = 1; day <= 5; ++day) weekdays.push_back(Date{2015, 6, day});
  const TradingCalendar cal(weekdays);

  const auto restricted = restrict_to_calendar(series, cal);
  CHECK(restricted.rows.size() == 5);
  for (const auto& row : restricted.rows) CHECK_FALSE(row.date.is_weekend());

  SUBCASE("calendar superset is the identity") {
    std::vector<Date> all;
    for (int day = 1; day <= 7; ++day) all.push_back(Date{2015, 6, day});
    const auto same = restrict_to_calendar(series, TradingCalendar(all));
    CHECK(same.rows.size() == series.rows.size());
  }
}

TEST_CASE("the study period has 249 trading days") {
  const auto cal = weekday_trading_calendar(Date{2014, 12, 1}, Date{2015, 12, 7});
  CHECK(cal.size() == 249);
  CHECK(cal.days().front() == Date{2014, 12, 1});
  CHECK(cal.days().back() == Date{2015, 12, 7});
}

TEST_CASE("restricting commutes with aggregation") {
  Rng rng(21);
  const auto cal = weekday_trading_calendar(Date{2015, 2, 2}, Date{2015, 3, 31});
  std::vector<ClassifiedTweet> tweets;
  for (int d = 0; d < 58; ++d) {
    const Date date = date_from_serial(Date{2015, 2, 2}.serial() + d);
    for (int i = 0; i < 3; ++i) {
      tweets.push_back(classified(date, static_cast<Emotion>(rng.next_below(5))));
    }
  }
  const auto aggregate_then_restrict = restrict_to_calendar(aggregate_daily(tweets), cal);
  std::vector<ClassifiedTweet> on_calendar;
  for (const auto& ct : tweets) {
    if (cal.contains(ct.tweet.date)) on_calendar.push_back(ct);
  }
  const auto restrict_then_aggregate = aggregate_daily(on_calendar);
  REQUIRE(aggregate_then_restrict.rows.size() == restrict_then_aggregate.rows.size());
  for (std::size_t i = 0; i < restrict_then_aggregate.rows.size(); ++i) {
    CHECK(aggregate_then_restrict.rows[i].date == restrict_then_aggregate.rows[i].date);
    CHECK(aggregate_then_restrict.rows[i].counts == restrict_then_aggregate.rows[i].counts);
  }
}

TEST_CASE("lag_series shifts by whole rows") {
  const std::vector<Date> dates = {Date{2015, 1, 5}, Date{2015, 1, 6}, Date{2015, 1, 7}};
  const std::vector<double> values = {1.0, 2.0, 3.0};  // a, b, c

  const auto lagged = lag_series(dates, values, 1);
  CHECK(lagged.dates == std::vector<Date>{Date{2015, 1, 6}, Date{2015, 1, 7}});
  CHECK(lagged.values == std::vector<double>{1.0, 2.0});

  CHECK_THROWS_AS(lag_series(dates, values, 0), ArgumentError);
  CHECK_THROWS_AS(lag_series(dates, values, 3), ArgumentError);
}

TEST_CASE("a 249-day series lagged by 5 has 244 aligned rows") {
  const auto cal = weekday_trading_calendar(Date{2014, 12, 1}, Date{2015, 12, 7});
  std::vector<double> values(cal.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>(i);
  const auto lagged = lag_series(cal.days(), values, 5);
  CHECK(lagged.values.size() == 244);
  CHECK(lagged.dates.size() == 244);
}

TEST_CASE("lagging equals a brute-force date join") {
  const auto series = random_series(40, 17);
  const int lag = 3;
  const auto lagged = lag_emotion(series, Emotion::sadness, lag);
  // Brute force: for each output date, find the source row `lag` rows back.
  for (std::size_t i = 0; i < lagged.dates.size(); ++i) {
    std::size_t row = 0;
    while (!(series.rows[row].date == lagged.dates[i])) ++row;
    CHECK(lagged.values[i] ==
          series.rows[row - lag].proportions[static_cast<int>(Emotion::sadness)]);
    CHECK(series.rows[row - lag].date < lagged.dates[i]);
  }
}

TEST_CASE("moving_average") {
  SUBCASE("constant series is invariant") {
    const std::vector<double> v(10, 3.25);
    for (const double m : moving_average(v, 4)) CHECK(m == doctest::Approx(3.25));
  }
  SUBCASE("hand example") {
    const std::vector<double> v = {1, 2, 3, 4};
    CHECK(moving_average(v, 2) == std::vector<double>{1.5, 2.5, 3.5});
  }
  SUBCASE("window equal to length gives the global mean") {
    const std::vector<double> v = {1, 2, 3, 4};
    const auto m = moving_average(v, 4);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == doctest::Approx(2.5));
  }
  SUBCASE("window larger than the series is an error") {
    const std::vector<double> v = {1, 2};
    CHECK_THROWS_AS(moving_average(v, 3), ArgumentError);
    CHECK_THROWS_AS(moving_average(v, 0), ArgumentError);
  }
}

TEST_CASE("minmax normalization") {
  SUBCASE("endpoints map to 0 and 1") {
    const std::vector<double> v = {0, 5, 10};
    const auto [scaled, bounds] = minmax_fit_transform(v);
    CHECK(scaled == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(bounds.min == 0.0);
    CHECK(bounds.max == 10.0);
  }
  SUBCASE("apply mode can leave [0,1]") {
    const std::vector<double> v = {12.0};
    CHECK(minmax_apply(v, {0.0, 10.0}) == std::vector<double>{1.2});
  }
  SUBCASE("constant series cannot be fitted") {
    const std::vector<double> v = {3, 3, 3};
    CHECK_THROWS_AS(minmax_fit_transform(v), DegenerateError);
  }
  SUBCASE("fit-then-apply attains 0 and 1 exactly") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<double> v(20);
      for (double& x : v) x = rng.next_normal() * 10.0;
      const auto [scaled, bounds] = minmax_fit_transform(v);
      CHECK(*std::min_element(scaled.begin(), scaled.end()) == 0.0);
      CHECK(*std::max_element(scaled.begin(), scaled.end()) == 1.0);
    }
  }
}

TEST_CASE("emotion series CSV round trip") {
  auto series = random_series(30, 123);
  series.segment = Segment::female;
  const std::string csv = emotion_series_to_csv(series);
  const auto parsed = parse_emotion_csv(csv, Segment::female);
  REQUIRE(parsed.rows.size() == series.rows.size());
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    CHECK(parsed.rows[i].date == series.rows[i].date);
    CHECK(parsed.rows[i].total == series.rows[i].total);
    CHECK(parsed.rows[i].counts == series.rows[i].counts);
  }
  CHECK_THROWS_AS(parse_emotion_csv("nope\n"), FormatError);
}

TEST_CASE("split_by_date partitions the series") {
  const auto series = random_series(30, 5);
  const Date boundary = series.rows[17].date;
  const auto [train, test] = split_by_date(series, boundary);
  CHECK(train.rows.size() + test.rows.size() == series.rows.size());
  for (const auto& row : train.rows) CHECK(row.date <= boundary);
  for (const auto& row : test.rows) CHECK(boundary < row.date);
}

TEST_CASE("a restriction that removes everything is empty, not an error") {
  const auto series = random_series(5, 2);
  const TradingCalendar far_future({Date{2030, 1, 6}, Date{2030, 1, 7}});
  EmotionSeries restricted;
  CHECK_NOTHROW(restricted = restrict_to_calendar(series, far_future));
  CHECK(restricted.rows.empty());
}
