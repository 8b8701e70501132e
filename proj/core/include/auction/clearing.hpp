#pragma once

#include <optional>
#include <string>
#include <vector>

#include "auction/book.hpp"

namespace auction {

// Outcome of clearing a call auction at one instant.
//
// `*_remaining` and `*_matched` split the limit volume resting exactly at the
// auction price. When one side carries more marketable interest than the
// other side can absorb (e.g. an excess of market orders), part of that side's
// higher-priority volume stays unexecuted too; it is reported separately as
// `*_unfilled_priority` and is zero on any book whose crossing is not pinned
// by the price-domain boundary. The exchange identities then read
//   Q = S(p) - sell_remaining - sell_unfilled_priority
//     = D(p) - buy_remaining  - buy_unfilled_priority,
//   (sell_remaining + sell_unfilled_priority) * (buy_remaining + buy_unfilled_priority) = 0,
// and V(p) = matched + remaining on each side.
class ClearingResult {
 public:
  struct Fields {
    Tick price;
    Shares volume = 0;
    Shares supply_at_price = 0;
    Shares demand_at_price = 0;
    Shares buy_at_price = 0;
    Shares sell_at_price = 0;
  };

  // Derives the matched/remaining split and checks the identities above;
  // throws std::logic_error if they do not hold.
  explicit ClearingResult(const Fields& f);

  Tick price() const noexcept { return price_; }
  Shares volume() const noexcept { return volume_; }
  // Signed supply minus demand at the auction price.
  Shares imbalance() const noexcept { return supply_ - demand_; }
  Shares supply_at_price() const noexcept { return supply_; }
  Shares demand_at_price() const noexcept { return demand_; }

  Shares at_price(Side s) const noexcept { return s == Side::kBuy ? buy_at_ : sell_at_; }
  Shares matched(Side s) const noexcept { return s == Side::kBuy ? buy_matched_ : sell_matched_; }
  Shares remaining(Side s) const noexcept { return s == Side::kBuy ? buy_remaining_ : sell_remaining_; }
  Shares unfilled_priority(Side s) const noexcept { return s == Side::kBuy ? buy_unfilled_ : sell_unfilled_; }

  friend bool operator==(const ClearingResult&, const ClearingResult&) = default;

 private:
  Tick price_;
  Shares volume_;
  Shares supply_;
  Shares demand_;
  Shares buy_at_;
  Shares sell_at_;
  Shares buy_matched_ = 0;
  Shares buy_remaining_ = 0;
  Shares buy_unfilled_ = 0;
  Shares sell_matched_ = 0;
  Shares sell_remaining_ = 0;
  Shares sell_unfilled_ = 0;
};

// Clears the book: maximise executable volume min(S, D), then minimise
// |S - D|, then minimise the distance to the reference price, then take the
// lower price. Candidate prices are the non-empty ticks; a book holding only
// market orders clears at the reference price. Without a reference price the
// third rule is skipped. Throws Error(kNoCross) when no candidate executes a
// positive volume.
ClearingResult clear(const Depth& depth, std::optional<Tick> reference = std::nullopt);
ClearingResult clear(const AuctionBook& book, std::optional<Tick> reference = std::nullopt);

// Executable volume min(S, D) and signed imbalance at every non-empty tick.
struct CandidatePrice {
  Tick tick;
  Shares executable = 0;
  Shares imbalance = 0;
};
std::vector<CandidatePrice> candidate_prices(const Depth& depth);

struct Fill {
  std::string order_id;
  Side side = Side::kBuy;
  std::optional<Tick> price;
  Shares quantity = 0;
};

// Per-order executions at the auction price. Market orders fill first, then
// better-priced limits, then limits at the auction price in time priority.
std::vector<Fill> allocate(const AuctionBook& book, const ClearingResult& result);

// Flat JSON record {p_a, q_a, imbalance, vbm, vbr, vsm, vsr, ...}.
std::string to_json(const ClearingResult& result, const PriceGrid& grid);

}  // namespace auction
