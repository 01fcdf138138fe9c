#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "emostock/errors.hpp"
#include "emostock/investors.hpp"
#include "emostock/rng.hpp"
#include "support/oracles.hpp"

using namespace emostock;

namespace {

TweetRecord user(std::int64_t followers, Gender gender) {
  TweetRecord t;
  t.id = "u";
  t.text = "x";
  t.followers = followers;
  t.gender = gender;
  return t;
}

DailyEmotionVector day_with(const Date& date, std::int64_t joy, std::int64_t fear,
                            std::int64_t anger = 0) {
  DailyEmotionVector row;
  row.date = date;
  row.counts[static_cast<int>(Emotion::joy)] = joy;
  row.counts[static_cast<int>(Emotion::fear)] = fear;
  row.counts[static_cast<int>(Emotion::anger)] = anger;
  row.total = joy + fear + anger;
  for (int e = 0; e < kEmotionCount; ++e) {
    row.proportions[e] = static_cast<double>(row.counts[e]) / row.total;
  }
  return row;
}

}  // namespace

TEST_CASE("segment assignment") {
  SUBCASE("low-follower woman") {
    const auto segs = assign_segments(user(50, Gender::female));
    CHECK(segs == std::vector<Segment>{Segment::flevel_1, Segment::female, Segment::all});
  }
  SUBCASE("boundary 100 goes to the lower tier") {
    const auto segs = assign_segments(user(100, Gender::unknown));
    CHECK(segs.front() == Segment::flevel_1);
  }
  SUBCASE("boundary 10000 goes to the top tier") {
    const auto segs = assign_segments(user(10000, Gender::unknown));
    CHECK(segs.front() == Segment::flevel_3);
  }
  SUBCASE("experienced anonymous account") {
    const auto segs = assign_segments(user(20000, Gender::unknown));
    CHECK(segs == std::vector<Segment>{Segment::flevel_3, Segment::all});
  }
}

TEST_CASE("every record lands in exactly one F-level") {
  Rng rng(4);
  std::size_t per_level[3] = {0, 0, 0};
  const std::size_t n = 500;
  for (std::size_t i = 0; i < n; ++i) {
    const auto followers = static_cast<std::int64_t>(rng.next_below(100000));
    const auto rec = user(followers, Gender::unknown);
    int hits = 0;
    for (const Segment s : {Segment::flevel_1, Segment::flevel_2, Segment::flevel_3}) {
      if (in_segment(rec, s)) {
        ++hits;
        ++per_level[static_cast<int>(s) - 1];
      }
    }
    CHECK(hits == 1);
    CHECK(in_segment(rec, Segment::all));
  }
  CHECK(per_level[0] + per_level[1] + per_level[2] == n);
}

TEST_CASE("RJF is the joy-to-fear ratio with zero-fear days excluded") {
  EmotionSeries series;
  series.rows = {
      day_with(Date{2015, 1, 5}, 2, 2, 6),   // joy == fear -> 1.0
      day_with(Date{2015, 1, 6}, 4, 2, 4),   // 0.4 / 0.2 -> 2.0
      day_with(Date{2015, 1, 7}, 3, 0, 7),   // zero fear -> excluded
  };
  const RjfSeries rjf = compute_rjf(series);
  REQUIRE(rjf.rjf.size() == 2);
  CHECK(rjf.rjf[0] == doctest::Approx(1.0));
  CHECK(rjf.rjf[1] == doctest::Approx(2.0));
  CHECK(rjf.excluded_zero_fear == 1);
  CHECK(rjf.dates == std::vector<Date>{Date{2015, 1, 5}, Date{2015, 1, 6}});
}

TEST_CASE("RJF is invariant to scaling a day's counts") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t joy = 1 + static_cast<std::int64_t>(rng.next_below(50));
    const std::int64_t fear = 1 + static_cast<std::int64_t>(rng.next_below(50));
    const std::int64_t k = 2 + static_cast<std::int64_t>(rng.next_below(9));
    EmotionSeries a, b;
    a.rows = {day_with(Date{2015, 1, 5}, joy, fear)};
    b.rows = {day_with(Date{2015, 1, 5}, joy * k, fear * k)};
    CHECK(compute_rjf(a).rjf[0] == doctest::Approx(compute_rjf(b).rjf[0]).epsilon(1e-12));
  }
}

TEST_CASE("volatility") {
  SUBCASE("constant series has zero dispersion") {
    const std::vector<double> r(10, 1.5);
    CHECK(volatility(r).sigma == 0.0);
  }
  SUBCASE("hand example") {
    const std::vector<double> r = {1, 2, 3};
    const auto rep = volatility(r);
    CHECK(rep.mu == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.sigma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.n == 3);
  }
  SUBCASE("needs two samples") {
    const std::vector<double> r = {1};
    CHECK_THROWS_AS(volatility(r), ArgumentError);
  }
  SUBCASE("matches the defining formula on random data") {
    Rng rng(6);
    std::vector<double> r(37);
    for (double& v : r) v = rng.next_normal() * 3.0 + 1.0;
    CHECK(volatility(r).sigma ==
          doctest::Approx(emostock::testing::stddev_reference(r)).epsilon(1e-12));
  }
  SUBCASE("concatenated identical series against brute force") {
    Rng rng(61);
    std::vector<double> r(25);
    for (double& v : r) v = rng.next_normal();
    std::vector<double> doubled(r);
    doubled.insert(doubled.end(), r.begin(), r.end());
    CHECK(volatility(doubled).sigma ==
          doctest::Approx(emostock::testing::stddev_reference(doubled)).epsilon(1e-12));
  }
}

TEST_CASE("rolling volatility") {
  RjfSeries series;
  for (int i = 0; i < 21; ++i) {
    series.dates.push_back(date_from_serial(16436 + i));
    series.rjf.push_back(i < 10 ? 1.0 : 2.0);
  }

  SUBCASE("constant windows are zero") {
    RjfSeries flat;
    for (int i = 0; i < 25; ++i) {
      flat.dates.push_back(date_from_serial(16436 + i));
      flat.rjf.push_back(0.8);
    }
    for (const auto& [date, sigma] : rolling_volatility(flat, 20)) CHECK(sigma == 0.0);
  }
  SUBCASE("length 21 with window 20 yields 2 rows") {
    const auto rolled = rolling_volatility(series, 20);
    CHECK(rolled.size() == 2);
    CHECK(rolled[0].first == series.dates[19]);
    CHECK(rolled[1].first == series.dates[20]);
  }
  SUBCASE("a 10/10 step change inside the window") {
    // First window: ten 1s and ten 2s -> sigma = sqrt(20 * 0.25 / 19).
    const auto rolled = rolling_volatility(series, 20);
    CHECK(rolled[0].second == doctest::Approx(std::sqrt(5.0 / 19.0)).epsilon(1e-12));
  }
  SUBCASE("window must fit") {
    RjfSeries tiny;
    tiny.dates = {Date{2015, 1, 5}};
    tiny.rjf = {1.0};
    CHECK_THROWS_AS(rolling_volatility(tiny, 20), ArgumentError);
    CHECK_THROWS_AS(rolling_volatility(series, 1), ArgumentError);
  }
}
