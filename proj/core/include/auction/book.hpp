#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "auction/order_event.hpp"
#include "auction/price_grid.hpp"

namespace auction {

struct DepthLevel {
  Tick tick;
  Shares buy = 0;
  Shares sell = 0;

  Shares total() const noexcept { return buy + sell; }
  Shares on(Side s) const noexcept { return s == Side::kBuy ? buy : sell; }
  friend bool operator==(const DepthLevel&, const DepthLevel&) = default;
};

// Aggregated resting volume of an auction book: strictly ascending non-empty
// price levels plus the unpriced market-order totals. Immutable once built,
// cheap to copy relative to a full book, and the only input clearing needs.
class Depth {
 public:
  Depth(PriceGrid grid, std::vector<DepthLevel> levels, Shares buy_market = 0, Shares sell_market = 0);

  const PriceGrid& grid() const noexcept { return grid_; }
  const std::vector<DepthLevel>& levels() const noexcept { return levels_; }
  Shares market(Side s) const noexcept { return s == Side::kBuy ? buy_market_ : sell_market_; }

  Shares volume(Side s, Tick t) const noexcept;
  Shares total(Side s) const noexcept;

  // sell_market + sum of sell volume at prices <= t.
  Shares supply(Tick t) const noexcept;
  // buy_market + sum of buy volume at prices >= t.
  Shares demand(Tick t) const noexcept;

  // Copy with `delta` unpriced shares added to (or, if negative, removed
  // from) the market total of side `s`. Throws kInvalidArgument if the total
  // would go negative.
  Depth with_market(Side s, Shares delta) const;

  friend bool operator==(const Depth&, const Depth&) = default;

 private:
  PriceGrid grid_;
  std::vector<DepthLevel> levels_;
  Shares buy_market_;
  Shares sell_market_;
};

struct RestingOrder {
  std::string id;
  Side side = Side::kBuy;
  OrderType type = OrderType::kLimit;
  std::optional<Tick> price;  // nullopt: unpriced market order
  Shares quantity = 0;
  std::int64_t submit_ts = 0;
  std::int64_t priority_ts = 0;
  LatencyFlag latency = LatencyFlag::kNon;
  AccountType account = AccountType::kClient;

  // Stop orders sit in the registry without contributing volume until a
  // MODIFY turns them into a limit or market order.
  bool inert() const noexcept { return type == OrderType::kStop; }
  bool is_market() const noexcept { return !inert() && !price; }
};

// Strict time priority: earlier priority timestamp first, then order id
// (numeric ids compare numerically).
bool priority_before(const RestingOrder& a, const RestingOrder& b) noexcept;

struct FlowTotals {
  Shares submitted = 0;    // new active shares, including size increases and stop activations
  Shares canceled = 0;     // active shares removed by CANCEL
  Shares decremented = 0;  // active shares removed by MODIFY
};

// Call-auction book reconstructed by replaying order events. Single writer;
// copies are independent snapshots.
class AuctionBook {
 public:
  explicit AuctionBook(PriceGrid grid);

  // Applies one event with strong exception safety. Throws Error with
  // kUnknownOrderId, kDuplicateOrderId, kOffGridPrice, kNonPositiveQuantity,
  // kMissingPrice or kSideMismatch.
  void apply(const OrderEvent& ev);

  const PriceGrid& grid() const noexcept { return grid_; }
  const std::map<Tick, DepthLevel>& levels() const noexcept { return levels_; }
  Shares volume(Side s, Tick t) const noexcept;
  Shares market_total(Side s) const noexcept { return s == Side::kBuy ? buy_market_ : sell_market_; }
  Shares supply(Tick t) const noexcept;
  Shares demand(Tick t) const noexcept;

  Depth depth() const;
  // Depth restricted to active orders accepted by `keep` (flag breakdowns).
  Depth depth_if(const std::function<bool(const RestingOrder&)>& keep) const;

  const RestingOrder* find(std::string_view order_id) const;
  const std::unordered_map<std::string, RestingOrder>& orders() const noexcept { return orders_; }

  // Active orders of side `s` at `price` (nullopt selects market orders),
  // sorted by time priority.
  std::vector<const RestingOrder*> queue(Side s, std::optional<Tick> price) const;

  // Live active shares of one side: resting limit volume plus market total.
  Shares live_shares(Side s) const noexcept;
  const FlowTotals& flow(Side s) const noexcept { return s == Side::kBuy ? buy_flow_ : sell_flow_; }

 private:
  void add_volume(const RestingOrder& o, Shares q);
  std::optional<Tick> resolve_price(const OrderEvent& ev) const;

  PriceGrid grid_;
  std::map<Tick, DepthLevel> levels_;
  Shares buy_market_ = 0;
  Shares sell_market_ = 0;
  std::unordered_map<std::string, RestingOrder> orders_;
  FlowTotals buy_flow_;
  FlowTotals sell_flow_;
};

AuctionBook apply_event(AuctionBook book, const OrderEvent& ev);

// Replays every event with timestamp <= until_us (all events when nullopt).
AuctionBook replay(const PriceGrid& grid, std::span<const OrderEvent> events,
                   std::optional<std::int64_t> until_us = std::nullopt);

}  // namespace auction
