#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "auction/density.hpp"
#include "auction/error.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/oracles.hpp"

using namespace auction;
using namespace fixture;

TEST(Density, AdjacentTicksUseTickGap) {
  const PriceGrid g = tenth_grid();
  const Depth d(g, {{g.parse("10.0"), 50, 0}, {g.parse("10.1"), 50, 0}});
  const auto pts = density(d, Side::kBuy, g.parse("10.0"), 100);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0].gap, 0.1, 1e-12);
  EXPECT_NEAR(pts[0].density, 500, 1e-9);
  EXPECT_NEAR(pts[0].scaled, 5.0, 1e-12);
  EXPECT_DOUBLE_EQ(pts[0].log_price, 0.0);
}

TEST(Density, GapSkipsEmptyTicks) {
  const PriceGrid g = tenth_grid();
  const Depth d(g, {{g.parse("10.0"), 50, 0}, {g.parse("10.3"), 50, 0}});
  const auto pts = density(d, Side::kBuy, g.parse("10.0"), 100);
  EXPECT_NEAR(pts[0].gap, 0.3, 1e-12);
  EXPECT_NEAR(pts[1].gap, 0.1, 1e-12);  // extreme tick of the side
}

TEST(Density, SellGapLooksDown) {
  const PriceGrid g = tenth_grid();
  const Depth d(g, {{g.parse("9.8"), 0, 20}, {g.parse("10.0"), 0, 40}});
  const auto pts = density(d, Side::kSell, g.parse("10.0"), 10);
  EXPECT_NEAR(pts[0].gap, 0.1, 1e-12);
  EXPECT_NEAR(pts[1].gap, 0.2, 1e-12);
}

TEST(Density, Errors) {
  const PriceGrid g = tenth_grid();
  const Depth d(g, {{g.parse("10.0"), 50, 0}});
  EXPECT_THROW(density(d, Side::kSell, g.parse("10.0"), 10), Error);
  EXPECT_THROW(density(d, Side::kBuy, g.parse("10.0"), 0), Error);
}

TEST(DensityProperty, IntegratesBackToShares) {
  std::mt19937_64 rng(8);
  const PriceGrid g = tenth_grid();
  oracle::RandomBookParams p;
  p.empty_prob = 0.6;
  p.base_tick = 100;
  for (int i = 0; i < 300; ++i) {
    const Depth d = oracle::to_depth(oracle::random_book(rng, p), g);
    for (Side s : {Side::kBuy, Side::kSell}) {
      if (d.total(s) == 0) continue;
      double sum = 0;
      for (const auto& pt : density(d, s, Tick{100}, 77)) sum += pt.scaled * pt.gap * 77;
      EXPECT_NEAR(sum, static_cast<double>(d.total(s)), 1e-7);
    }
  }
}

TEST(Density, TotalDensityBeyondAuctionPrice) {
  const PriceGrid g = tenth_grid();
  const Depth d(g, {{g.parse("10.0"), 10, 10}, {g.parse("10.1"), 5, 5}, {g.parse("10.3"), 0, 30}});
  const auto up = total_density(d, Side::kBuy, g.parse("10.0"), 10, 1.0);
  ASSERT_EQ(up.size(), 2u);
  EXPECT_NEAR(up[0].gap, 0.2, 1e-12);
  EXPECT_NEAR(up[0].scaled, 10 / 0.2 / 10, 1e-9);
  EXPECT_NEAR(up[1].gap, 0.1, 1e-12);
  EXPECT_TRUE(total_density(d, Side::kSell, g.parse("10.0"), 10, 1.0).empty());
  EXPECT_EQ(total_density(d, Side::kBuy, g.parse("10.0"), 10, 0.015).size(), 1u);
}

TEST(DensityProfile, SingleDayAndAverage) {
  const Depth d = clearing_example_depth();
  const ClearingResult r = clear(d);
  const DensityProfile one = day_profile(d, r, kBasisPoint);
  const DensityProfile avg = average_density(std::vector<DensityProfile>{one});
  ASSERT_EQ(avg.bins.size(), one.bins.size());
  for (const auto& [k, b] : one.bins) {
    EXPECT_DOUBLE_EQ(avg.bins.at(k).rho_buy, b.rho_buy);
    EXPECT_DOUBLE_EQ(avg.bins.at(k).rho_sell, b.rho_sell);
  }
  // rho * dx * Q_a sums to the shares on each side.
  double buy = 0, sell = 0;
  for (const auto& [k, b] : one.bins) {
    buy += b.rho_buy * kBasisPoint * 60;
    sell += b.rho_sell * kBasisPoint * 60;
  }
  EXPECT_NEAR(buy, 90, 1e-9);
  EXPECT_NEAR(sell, 120, 1e-9);
}

TEST(DensityProfile, ArithmeticMeanOfTwoDays) {
  DensityProfile a, b;
  a.day_count = b.day_count = 1;
  a.bins[0] = {2, 0, 1};
  b.bins[0] = {4, 0, 1};
  b.bins[3] = {0, 6, 1};
  const auto avg = average_density(std::vector<DensityProfile>{a, b});
  EXPECT_DOUBLE_EQ(avg.bins.at(0).rho_buy, 3);
  EXPECT_DOUBLE_EQ(avg.bins.at(3).rho_sell, 3);  // absent on day a counts as zero
  EXPECT_EQ(avg.bins.at(3).n_days, 1u);
  EXPECT_EQ(avg.day_count, 2u);
}

TEST(DensityProfile, MismatchedBinning) {
  DensityProfile a, b;
  a.day_count = b.day_count = 1;
  b.bin_width = 2 * kBasisPoint;
  try {
    average_density(std::vector<DensityProfile>{a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMismatchedBinning);
  }
  EXPECT_THROW(average_density(std::vector<DensityProfile>{}), Error);
}

TEST(DensityProfile, GroupsSumToUngrouped) {
  std::mt19937_64 rng(21);
  const PriceGrid g = tenth_grid();
  std::vector<DensityProfile> plain, by_latency;
  std::uniform_int_distribution<int> flag(0, 2);
  for (int day = 0; day < 5; ++day) {
    auto events = oracle::random_log(rng, 300);
    for (auto& ev : events) ev.latency = kAllLatencyFlags[flag(rng)];
    const AuctionBook book = replay(g, events);
    ClearingResult r = [&] {
      try {
        return clear(book);
      } catch (const Error&) {
        return clear(book.depth().with_market(Side::kBuy, 1000));
      }
    }();
    for (auto& p : day_profiles(book, r, 5 * kBasisPoint, Grouping::kNone)) plain.push_back(p);
    for (auto& p : day_profiles(book, r, 5 * kBasisPoint, Grouping::kLatency)) by_latency.push_back(p);
  }
  const DensityProfile total = average_density(plain);
  const auto groups = average_by_group(by_latency);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(*groups[0].group, "HFT");
  for (const auto& [k, bin] : total.bins) {
    double buy = 0, sell = 0;
    for (const auto& gp : groups) {
      if (auto it = gp.bins.find(k); it != gp.bins.end()) {
        buy += it->second.rho_buy;
        sell += it->second.rho_sell;
      }
    }
    EXPECT_NEAR(buy, bin.rho_buy, 1e-9 * (1 + bin.rho_buy));
    EXPECT_NEAR(sell, bin.rho_sell, 1e-9 * (1 + bin.rho_sell));
  }
}
