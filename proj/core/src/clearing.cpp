#include "auction/clearing.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "auction/error.hpp"

namespace auction {

ClearingResult::ClearingResult(const Fields& f)
    : price_(f.price),
      volume_(f.volume),
      supply_(f.supply_at_price),
      demand_(f.demand_at_price),
      buy_at_(f.buy_at_price),
      sell_at_(f.sell_at_price) {
  const Shares rest_sell = supply_ - volume_;
  const Shares rest_buy = demand_ - volume_;
  if (volume_ < 0 || rest_sell < 0 || rest_buy < 0 || buy_at_ < 0 || sell_at_ < 0) {
    throw std::logic_error("clearing result: negative volume");
  }
  sell_remaining_ = std::min(rest_sell, sell_at_);
  sell_unfilled_ = rest_sell - sell_remaining_;
  sell_matched_ = sell_at_ - sell_remaining_;
  buy_remaining_ = std::min(rest_buy, buy_at_);
  buy_unfilled_ = rest_buy - buy_remaining_;
  buy_matched_ = buy_at_ - buy_remaining_;

  if (volume_ != supply_ - sell_remaining_ - sell_unfilled_ || volume_ != demand_ - buy_remaining_ - buy_unfilled_) {
    throw std::logic_error("clearing result: auction volume identity violated");
  }
  if (rest_sell != 0 && rest_buy != 0) {
    throw std::logic_error("clearing result: both sides keep remaining volume at the auction price");
  }
  if (buy_at_ != buy_matched_ + buy_remaining_ || sell_at_ != sell_matched_ + sell_remaining_) {
    throw std::logic_error("clearing result: matched + remaining != volume at price");
  }
}

namespace {

struct Candidate {
  Tick tick;
  Shares supply = 0;
  Shares demand = 0;
};

// True when `a` is strictly preferred to `b` under the exchange rule chain.
bool better(const Candidate& a, const Candidate& b, std::optional<Tick> ref) noexcept {
  const Shares va = std::min(a.supply, a.demand);
  const Shares vb = std::min(b.supply, b.demand);
  if (va != vb) return va > vb;
  const Shares ia = std::llabs(a.supply - a.demand);
  const Shares ib = std::llabs(b.supply - b.demand);
  if (ia != ib) return ia < ib;
  if (ref) {
    const auto da = std::llabs(a.tick - *ref);
    const auto db = std::llabs(b.tick - *ref);
    if (da != db) return da < db;
  }
  return a.tick < b.tick;
}

}  // namespace

ClearingResult clear(const Depth& depth, std::optional<Tick> reference) {
  const auto& lv = depth.levels();
  const Shares bm = depth.market(Side::kBuy);
  const Shares sm = depth.market(Side::kSell);

  if (lv.empty()) {
    if (!reference) throw Error(ErrorCode::kNoCross, "empty book and no reference price");
    if (std::min(bm, sm) <= 0) throw Error(ErrorCode::kNoCross, "no executable volume");
    return ClearingResult({*reference, std::min(bm, sm), sm, bm, 0, 0});
  }

  const std::size_t n = lv.size();
  // demand at each level (suffix sums of buy volume).
  std::vector<Shares> demand(n);
  Shares acc = bm;
  for (std::size_t i = n; i-- > 0;) {
    acc += lv[i].buy;
    demand[i] = acc;
  }

  std::optional<Candidate> best;
  auto offer = [&](Candidate c) {
    if (!best || better(c, *best, reference)) best = c;
  };

  Shares supply = sm;
  for (std::size_t i = 0; i < n; ++i) {
    supply += lv[i].sell;
    offer({lv[i].tick, supply, demand[i]});
  }

  const Shares q = std::min(best->supply, best->demand);
  if (q <= 0) throw Error(ErrorCode::kNoCross, "supply and demand do not cross");
  return ClearingResult({best->tick, q, best->supply, best->demand, depth.volume(Side::kBuy, best->tick),
                         depth.volume(Side::kSell, best->tick)});
}

ClearingResult clear(const AuctionBook& book, std::optional<Tick> reference) {
  return clear(book.depth(), reference);
}

std::vector<CandidatePrice> candidate_prices(const Depth& depth) {
  std::vector<CandidatePrice> out;
  out.reserve(depth.levels().size());
  for (const auto& l : depth.levels()) {
    const Shares s = depth.supply(l.tick);
    const Shares d = depth.demand(l.tick);
    out.push_back({l.tick, std::min(s, d), s - d});
  }
  return out;
}

std::vector<Fill> allocate(const AuctionBook& book, const ClearingResult& result) {
  std::vector<Fill> fills;
  const Tick pa = result.price();

  for (Side side : {Side::kBuy, Side::kSell}) {
    Shares budget = result.volume();
    auto take = [&](const RestingOrder& o) {
      const Shares q = std::min(budget, o.quantity);
      if (q > 0) fills.push_back({o.id, side, o.price, q});
      budget -= q;
    };

    for (const RestingOrder* o : book.queue(side, std::nullopt)) take(*o);

    // Better-priced limits: above p_a for buys, below p_a for sells, best price first.
    std::vector<Tick> better_ticks;
    for (const auto& [tick, level] : book.levels()) {
      if (level.on(side) == 0) continue;
      if ((side == Side::kBuy && tick > pa) || (side == Side::kSell && tick < pa)) better_ticks.push_back(tick);
    }
    if (side == Side::kBuy) std::reverse(better_ticks.begin(), better_ticks.end());
    for (Tick t : better_ticks) {
      for (const RestingOrder* o : book.queue(side, t)) take(*o);
    }

    for (const RestingOrder* o : book.queue(side, pa)) take(*o);
  }
  return fills;
}

}  // namespace auction
