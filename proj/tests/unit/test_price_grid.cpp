#include <gtest/gtest.h>

#include "auction/error.hpp"
#include "auction/price_grid.hpp"

using namespace auction;

TEST(PriceUnits, ParsesAndFormatsExactly) {
  EXPECT_EQ(parse_price_units("10.1"), 1'010'000'000);
  EXPECT_EQ(parse_price_units("48"), 4'800'000'000);
  EXPECT_EQ(parse_price_units("0.005"), 500'000);
  EXPECT_EQ(format_price_units(1'010'000'000), "10.1");
  EXPECT_EQ(format_price_units(4'800'000'000), "48");
  EXPECT_EQ(format_price_units(500'000), "0.005");
}

TEST(PriceUnits, RejectsMalformed) {
  EXPECT_THROW(parse_price_units(""), Error);
  EXPECT_THROW(parse_price_units("1.2.3"), Error);
  EXPECT_THROW(parse_price_units("abc"), Error);
  EXPECT_THROW(parse_price_units("0.000000001"), Error);
}

TEST(PriceGrid, RoundTripsTicks) {
  const PriceGrid g(parse_price_units("0.1"));
  const Tick t = g.parse("10.1");
  EXPECT_EQ(t.index, 101);
  EXPECT_EQ(g.format(t), "10.1");
  EXPECT_EQ(g.format(t + 1), "10.2");
  EXPECT_DOUBLE_EQ(g.value(t), 10.1);
}

TEST(PriceGrid, OffGridPriceThrows) {
  const PriceGrid g(parse_price_units("0.05"));
  try {
    g.parse("10.02");
    FAIL() << "expected OffGridPrice";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOffGridPrice);
  }
  EXPECT_FALSE(g.try_tick(parse_price_units("10.02")));
  EXPECT_TRUE(g.try_tick(parse_price_units("10.05")));
}

TEST(PriceGrid, AnchorShiftsTheLattice) {
  const PriceGrid g(parse_price_units("0.1"), parse_price_units("0.05"));
  EXPECT_EQ(g.format(g.parse("10.05")), "10.05");
  EXPECT_THROW(g.parse("10.1"), Error);
}

TEST(PriceGrid, NonPositiveTickRejected) {
  EXPECT_THROW(PriceGrid(0), Error);
  EXPECT_THROW(PriceGrid(-5), Error);
}

TEST(PriceGrid, NearestRoundsToGrid) {
  const PriceGrid g = PriceGrid::from_tick_size(0.01);
  EXPECT_EQ(g.format(g.nearest(100.004)), "100");
  EXPECT_EQ(g.format(g.nearest(100.006)), "100.01");
}
