#include <gtest/gtest.h>

#include <random>

#include "auction/error.hpp"
#include "auction/impact.hpp"
#include "auction/response.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/oracles.hpp"

using namespace auction;
using namespace fixture;

TEST(Classify, AggressiveLimitsAndMarkets) {
  const AuctionBook book = replay(tenth_grid(), clearing_example());
  const Tick p_ind = clear(book).price();  // 10.1
  auto buy_up = classify_marketable(submit(10, "x", Side::kBuy, "10.2", 5), book, p_ind);
  ASSERT_TRUE(buy_up);
  EXPECT_EQ(buy_up->epsilon, 1);
  EXPECT_FALSE(classify_marketable(submit(10, "x", Side::kSell, "10.2", 5), book, p_ind));
  EXPECT_TRUE(classify_marketable(submit(10, "x", Side::kSell, "10.1", 5), book, p_ind));  // inclusive
  auto mkt = classify_marketable(market(10, "x", Side::kSell, 5), book, p_ind);
  ASSERT_TRUE(mkt);
  EXPECT_EQ(mkt->epsilon, -1);
  EXPECT_FALSE(classify_marketable(modify(10, "s1", Side::kSell, "10.0", 5), book, p_ind));
  EXPECT_FALSE(classify_marketable(cancel(10, "unknown"), book, p_ind));
}

TEST(Classify, CancellationSigns) {
  const AuctionBook book = replay(tenth_grid(), clearing_example());
  const Tick p_ind = clear(book).price();
  // s1 sells at 10.0 <= 10.1: marketable; its cancellation counts as +1.
  auto sell_cancel = classify_marketable(cancel(10, "s1"), book, p_ind);
  ASSERT_TRUE(sell_cancel);
  EXPECT_EQ(sell_cancel->epsilon, 1);
  EXPECT_EQ(sell_cancel->quantity, 30);
  // b3 buys at 10.1 >= 10.1: marketable; cancellation counts as -1.
  auto buy_cancel = classify_marketable(cancel(10, "b3"), book, p_ind);
  ASSERT_TRUE(buy_cancel);
  EXPECT_EQ(buy_cancel->epsilon, -1);
  // b1 at 9.9 is passive.
  EXPECT_FALSE(classify_marketable(cancel(10, "b1"), book, p_ind));
}

TEST(LogBins, EdgesAndIndex) {
  LogBins b;
  EXPECT_DOUBLE_EQ(b.edge(0), 1e-5);
  EXPECT_NEAR(b.edge(30), 1.0, 1e-12);
  EXPECT_EQ(b.index(1e-5), 0u);
  EXPECT_EQ(b.index(1.0), 29u);
  EXPECT_FALSE(b.index(0.5e-5));
  EXPECT_FALSE(b.index(1.5));
  EXPECT_EQ(b.index(b.edge(6) * 1.0000001), 6u);
}

TEST(Response, NoMovesMeansZeroResponse) {
  std::vector<OrderEvent> events{submit(0, "a", Side::kBuy, "10.0", 1000), submit(1, "b", Side::kSell, "10.0", 1000)};
  // Small marketable orders on both sides, none able to move the price.
  for (int i = 0; i < 20; ++i) {
    events.push_back(submit(100 + i, "m" + std::to_string(i), i % 2 ? Side::kBuy : Side::kSell, "10.0", 5));
  }
  ResponseOptions o;
  o.warmup_us = 50;
  const auto res = response_curves(tenth_grid(), events, o);
  EXPECT_EQ(res.events.size(), 20u);
  for (const auto& b : res.bins) {
    if (b.count == 0) continue;
    EXPECT_EQ(*b.r1, 0.0);
    EXPECT_EQ(*b.rm, 0.0);
  }
}

TEST(Response, SingleEventUsesFinalClearingForR1) {
  const PriceGrid g = tenth_grid();
  // p_ind = 10.0 with 10 shares; a 15-share buy market order lifts it to 10.1.
  std::vector<OrderEvent> events{submit(0, "a", Side::kBuy, "10.0", 10), submit(1, "b", Side::kSell, "10.0", 10),
                                 submit(2, "c", Side::kSell, "10.1", 50), market(100, "m", Side::kBuy, 15)};
  ResponseOptions o;
  o.warmup_us = 50;
  const auto res = response_curves(g, events, o);
  ASSERT_EQ(res.events.size(), 1u);
  const auto& e = res.events[0];
  EXPECT_EQ(g.format(e.p_before), "10");
  EXPECT_EQ(g.format(e.p_after), "10.1");
  EXPECT_EQ(e.p_next, e.p_after);
  EXPECT_DOUBLE_EQ(e.omega, 1.5);
  const auto k = o.bins.index(1.5);
  EXPECT_FALSE(k);  // beyond the default range
  o.bins.hi = 10;
  const auto res2 = response_curves(g, events, o);
  const auto& bin = res2.bins[*o.bins.index(1.5)];
  EXPECT_EQ(bin.count, 1u);
  EXPECT_NEAR(*bin.rm, 0.1, 1e-12);
  EXPECT_NEAR(*bin.r1, 0.1, 1e-12);
}

TEST(Response, WarmupAndCancelsOption) {
  const PriceGrid g = tenth_grid();
  std::vector<OrderEvent> events{submit(0, "a", Side::kBuy, "10.0", 10), submit(1, "b", Side::kSell, "10.0", 10),
                                 submit(2, "c", Side::kBuy, "10.0", 5), cancel(200, "c")};
  ResponseOptions o;
  o.warmup_us = 100;
  o.with_cancels = false;
  EXPECT_TRUE(response_curves(g, events, o).events.empty());
  o.with_cancels = true;
  const auto res = response_curves(g, events, o);
  ASSERT_EQ(res.events.size(), 1u);
  EXPECT_EQ(res.events[0].epsilon, -1);
  EXPECT_EQ(res.events[0].kind, Action::kCancel);
}

TEST(ResponseProperty, MechanicalConsistencyAndZeroImpactDominance) {
  std::mt19937_64 rng(5);
  const PriceGrid g = tenth_grid();
  std::size_t submits = 0, below_omega0 = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto events = oracle::random_log(rng, 600);
    ResponseOptions o;
    o.warmup_us = 100;
    o.reference = g.parse("10.0");
    const auto res = response_curves(g, events, o);
    // Re-derive omega0 from the pre-event book for market submissions.
    AuctionBook book(g);
    std::size_t next = 0;
    for (const auto& e : res.events) {
      while (events[next].timestamp_us < e.t_us) book.apply(events[next++]);
      const OrderEvent& ev = events[next];
      if (e.kind != Action::kSubmit) continue;
      ++submits;
      ASSERT_GE(e.epsilon * (e.p_after - e.p_before), 0) << "t=" << e.t_us;
      if (ev.type != OrderType::kMarket) continue;
      const Depth d = book.depth();
      const ClearingResult r = clear(d, o.reference);
      const ImpactCurve c = impact_curve(d, r, e.side, 1.0);
      if (Ratio{e.quantity, r.volume()} < c.omega0) {
        ++below_omega0;
        ASSERT_EQ(e.p_after, e.p_before) << "t=" << e.t_us;
      }
    }
  }
  EXPECT_GT(submits, 100u);
  EXPECT_GT(below_omega0, 10u);
}

TEST(ResponseProperty, VirtualImpactOfMarketOrdersIsTheMechanicalMove) {
  std::mt19937_64 rng(6);
  const PriceGrid g = tenth_grid();
  for (int trial = 0; trial < 20; ++trial) {
    auto events = oracle::random_log(rng, 400);
    ResponseOptions o;
    o.warmup_us = 50;
    o.virtual_impact = true;
    o.with_cancels = true;
    o.reference = g.parse("10.0");
    const auto res = response_curves(g, events, o);
    for (const auto& e : res.events) {
      const auto it = std::find_if(events.begin(), events.end(), [&](const OrderEvent& ev) {
        return ev.timestamp_us == e.t_us;
      });
      const bool market_submit = e.kind == Action::kSubmit && it->type == OrderType::kMarket;
      if (market_submit && e.p_virtual) {
        ASSERT_EQ(*e.p_virtual, e.p_after);
      }
    }
  }
}
