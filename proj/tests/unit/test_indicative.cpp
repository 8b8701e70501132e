#include <gtest/gtest.h>

#include <random>

#include "auction/error.hpp"
#include "auction/indicative.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/oracles.hpp"

using namespace auction;
using namespace fixture;

TEST(Indicative, StaticBookGivesIdenticalPoints) {
  const auto events = clearing_example();
  SeriesOptions o;
  o.start_us = 0;
  o.end_us = 15'000'000;
  const auto series = indicative_series(tenth_grid(), events, o);
  ASSERT_EQ(series.size(), 3u);
  for (const auto& p : series) {
    ASSERT_TRUE(p.price);
    EXPECT_EQ(p.price, series.front().price);
    EXPECT_EQ(p.volume, 60);
  }
}

TEST(Indicative, FinalPointIsTheClearing) {
  const auto events = clearing_example();
  SeriesOptions o;
  o.interval_us = 2;
  const auto series = indicative_series(tenth_grid(), events, o);
  ASSERT_FALSE(series.empty());
  EXPECT_EQ(series.back().t_us, events.back().timestamp_us);
  const auto r = clear(replay(tenth_grid(), events));
  EXPECT_EQ(series.back().price, r.price());
  EXPECT_EQ(series.back().volume, r.volume());
}

TEST(Indicative, NoCrossPointsAreAbsent) {
  const std::vector<OrderEvent> events{submit(0, "a", Side::kBuy, "10.0", 5), submit(10, "b", Side::kSell, "10.3", 5),
                                       submit(20, "c", Side::kSell, "9.9", 5)};
  SeriesOptions o;
  o.interval_us = 10;
  const auto series = indicative_series(tenth_grid(), events, o);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_FALSE(series[0].price);
  EXPECT_TRUE(series[1].price);
}

TEST(Indicative, SnapshotTimes) {
  SeriesOptions o;
  o.interval_us = 5;
  o.start_us = 0;
  o.end_us = 12;
  EXPECT_EQ(snapshot_times({}, o), (std::vector<std::int64_t>{5, 10, 12}));
  o.interval_us = 0;
  EXPECT_THROW(snapshot_times({}, o), Error);
}

TEST(IndicativeProperty, MatchesFromScratchReplay) {
  std::mt19937_64 rng(11);
  const PriceGrid g = tenth_grid();
  for (int trial = 0; trial < 20; ++trial) {
    const auto events = oracle::random_log(rng, 400);
    SeriesOptions o;
    o.interval_us = 1 + trial * 7;
    const auto series = indicative_series(g, events, o, g.parse("10.0"));
    for (const auto& p : series) {
      const auto book = oracle::from_depth(replay(g, events, p.t_us).depth());
      const auto expected = oracle::clear(book, g.parse("10.0").index);
      ASSERT_EQ(p.price.has_value(), expected.has_value()) << "t=" << p.t_us;
      if (!expected) continue;
      ASSERT_EQ(p.price->index, expected->tick);
      ASSERT_EQ(p.volume, expected->volume);
    }
  }
}
