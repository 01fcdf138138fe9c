#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "emostock/errors.hpp"
#include "emostock/market.hpp"
#include "emostock/rng.hpp"
#include "emostock/synth.hpp"

using namespace emostock;

namespace {

const char* kSmallCsv =
    "date,open,high,low,close,volume\n"
    "2015-01-05,3000,3050,2980,3030,1000000\n"
    "2015-01-06,3030,3100,3020,3090,1200000\n"
    "2015-01-07,3080,3090,3000,3010,900000\n";

std::vector<MarketDay> random_days(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<MarketDay> days;
  double close = 3000.0;
  for (std::size_t i = 0; i < n; ++i) {
    MarketDay d;
    d.date = date_from_serial(16436 + static_cast<std::int64_t>(i));
    const double prev = close;
    close = prev * (1.0 + 0.01 * rng.next_normal());
    d.close = close;
    d.open = prev * (1.0 + 0.005 * rng.next_normal());
    d.high = std::max(d.open, d.close) * (1.0 + 0.002 * std::abs(rng.next_normal()));
    d.low = std::min(d.open, d.close) * (1.0 - 0.002 * std::abs(rng.next_normal()));
    d.volume = 1e6 * std::exp(0.2 * rng.next_normal());
    days.push_back(d);
  }
  return days;
}

}  // namespace

TEST_CASE("parse_market_csv reads rows and builds the calendar") {
  const MarketData data = parse_market_csv(kSmallCsv);
  CHECK(data.days.size() == 3);
  CHECK(data.calendar.size() == 3);
  CHECK(data.calendar.contains(Date{2015, 1, 6}));
  CHECK(data.days[1].high == 3100.0);
}

TEST_CASE("parse_market_csv validation") {
  SUBCASE("low above open names the date") {
    const std::string bad =
        "date,open,high,low,close,volume\n"
        "2015-01-05,3000,3050,3005,3030,1000000\n";
    try {
      parse_market_csv(bad);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("2015-01-05") != std::string::npos);
    }
  }
  SUBCASE("non-monotone dates are a format error") {
    const std::string bad =
        "date,open,high,low,close,volume\n"
        "2015-01-06,3000,3050,2980,3030,1000000\n"
        "2015-01-05,3000,3050,2980,3030,1000000\n";
    CHECK_THROWS_AS(parse_market_csv(bad), FormatError);
  }
  SUBCASE("bad header") {
    CHECK_THROWS_AS(parse_market_csv("open,high\n"), FormatError);
  }
  SUBCASE("non-positive volume") {
    const std::string bad =
        "date,open,high,low,close,volume\n"
        "2015-01-05,3000,3050,2980,3030,0\n";
    CHECK_THROWS_AS(parse_market_csv(bad), ValidationError);
  }
}

TEST_CASE("the synthetic study-period market file has 249 rows") {
  const auto dir = std::filesystem::temp_directory_path() / "emostock_market_249";
  std::filesystem::remove_all(dir);
  SynthParams params;
  params.tweets_per_day = 1;  // market rows are what this test is about
  params.seed = 3;
  generate_fixture(params, dir);
  const MarketData data = load_market_csv(dir / "market.csv");
  CHECK(data.days.size() == 249);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rate_of_change_targets implements the percent transform") {
  std::vector<MarketDay> days(2);
  days[0] = {Date{2015, 1, 5}, 3000, 3010, 2990, 3000, 1e6};
  days[1] = {Date{2015, 1, 6}, 3005, 3090, 2940, 3000, 1e6};

  SUBCASE("flat close is zero") {
    const auto t = rate_of_change_targets(days);
    REQUIRE(t.size() == 1);
    CHECK(t.close_r[0] == doctest::Approx(0.0));
  }
  SUBCASE("3000 to 3150 is +5 percent") {
    days[1].close = 3150;
    days[1].high = 3160;
    const auto t = rate_of_change_targets(days);
    CHECK(t.close_r[0] == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("high and low rates against the previous close") {
    days[1] = {Date{2015, 1, 6}, 3000, 3090, 2940, 3050, 1e6};
    const auto t = rate_of_change_targets(days);
    CHECK(t.high_r[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(t.low_r[0] == doctest::Approx(-2.0).epsilon(1e-12));
  }
  SUBCASE("volume passes through untransformed") {
    days[1].volume = 777.0;
    const auto t = rate_of_change_targets(days);
    CHECK(t.volume[0] == 777.0);
  }
  SUBCASE("fewer than two days is an error") {
    days.pop_back();
    CHECK_THROWS_AS(rate_of_change_targets(days), ArgumentError);
  }
}

TEST_CASE("rate transform inverts back to the raw index") {
  const auto days = random_days(120, 31);
  const auto t = rate_of_change_targets(days);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double prev_close = days[i].close;
    const double reconstructed = prev_close * (1.0 + t.close_r[i] / 100.0);
    CHECK(std::abs(reconstructed - days[i + 1].close) <=
          1e-9 * std::abs(days[i + 1].close));
  }
}

TEST_CASE("per-day rate ordering follows the OHLC invariants") {
  const auto days = random_days(200, 7);
  const auto t = rate_of_change_targets(days);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t.high_r[i] >= t.close_r[i]);
    CHECK(t.high_r[i] >= t.open_r[i]);
    CHECK(t.low_r[i] <= t.close_r[i]);
    CHECK(t.low_r[i] <= t.open_r[i]);
  }
}

TEST_CASE("chronological split") {
  const auto days = random_days(10, 11);
  const auto targets = rate_of_change_targets(days);

  SUBCASE("boundary day belongs to the training side") {
    // Rows dated on the boundary go to train; the next session starts test.
    const Date boundary = targets.dates[4];
    const auto [train, test] = split_by_date(targets, boundary);
    CHECK(train.dates.back() == boundary);
    CHECK(test.dates.front() == targets.dates[5]);
  }
  SUBCASE("boundary after the last date leaves test empty") {
    const auto [train, test] = split_by_date(targets, Date{2099, 1, 1});
    CHECK(test.size() == 0);
    CHECK(train.size() == targets.size());
  }
  SUBCASE("8/2 split on ten rows") {
    const auto [train_days, test_days] = split_by_date(days, days[7].date);
    CHECK(train_days.size() == 8);
    CHECK(test_days.size() == 2);
  }
  SUBCASE("split is a partition") {
    const Date boundary = targets.dates[3];
    const auto [train, test] = split_by_date(targets, boundary);
    CHECK(train.size() + test.size() == targets.size());
    for (const auto& d : train.dates) CHECK(d <= boundary);
    for (const auto& d : test.dates) CHECK(boundary < d);
  }
}

TEST_CASE("targets CSV round trip") {
  const auto days = random_days(40, 13);
  const auto t = rate_of_change_targets(days);
  const auto parsed = parse_targets_csv(targets_to_csv(t));
  REQUIRE(parsed.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(parsed.dates[i] == t.dates[i]);
    CHECK(parsed.close_r[i] == doctest::Approx(t.close_r[i]).epsilon(1e-10));
    CHECK(parsed.volume[i] == doctest::Approx(t.volume[i]).epsilon(1e-10));
  }
}
