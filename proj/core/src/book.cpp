#include "auction/book.hpp"

#include <algorithm>

#include "auction/error.hpp"

namespace auction {

// ---------------------------------------------------------------------------
// Depth

Depth::Depth(PriceGrid grid, std::vector<DepthLevel> levels, Shares buy_market, Shares sell_market)
    : grid_(grid), buy_market_(buy_market), sell_market_(sell_market) {
  if (buy_market < 0 || sell_market < 0) throw Error(ErrorCode::kInvalidArgument, "negative market total");
  std::sort(levels.begin(), levels.end(), [](const DepthLevel& a, const DepthLevel& b) { return a.tick < b.tick; });
  levels_.reserve(levels.size());
  for (const auto& lvl : levels) {
    if (lvl.buy < 0 || lvl.sell < 0) throw Error(ErrorCode::kInvalidArgument, "negative level volume");
    if (lvl.total() == 0) continue;
    if (!levels_.empty() && levels_.back().tick == lvl.tick) {
      levels_.back().buy += lvl.buy;
      levels_.back().sell += lvl.sell;
    } else {
      levels_.push_back(lvl);
    }
  }
}

Shares Depth::volume(Side s, Tick t) const noexcept {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), t,
                             [](const DepthLevel& l, Tick v) { return l.tick < v; });
  if (it == levels_.end() || it->tick != t) return 0;
  return it->on(s);
}

Shares Depth::total(Side s) const noexcept {
  Shares sum = 0;
  for (const auto& l : levels_) sum += l.on(s);
  return sum;
}

Shares Depth::supply(Tick t) const noexcept {
  Shares sum = sell_market_;
  for (const auto& l : levels_) {
    if (l.tick > t) break;
    sum += l.sell;
  }
  return sum;
}

Shares Depth::demand(Tick t) const noexcept {
  Shares sum = buy_market_;
  for (auto it = levels_.rbegin(); it != levels_.rend() && it->tick >= t; ++it) sum += it->buy;
  return sum;
}

Depth Depth::with_market(Side s, Shares delta) const {
  Depth copy = *this;
  Shares& target = s == Side::kBuy ? copy.buy_market_ : copy.sell_market_;
  if (target + delta < 0) throw Error(ErrorCode::kInvalidArgument, "market total would become negative");
  target += delta;
  return copy;
}

// ---------------------------------------------------------------------------
// Priority

namespace {

bool all_digits(std::string_view s) noexcept {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_leading_zeros(std::string_view s) noexcept {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return s;
}

bool id_less(std::string_view a, std::string_view b) noexcept {
  if (all_digits(a) && all_digits(b)) {
    a = strip_leading_zeros(a);
    b = strip_leading_zeros(b);
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

}  // namespace

bool priority_before(const RestingOrder& a, const RestingOrder& b) noexcept {
  if (a.priority_ts != b.priority_ts) return a.priority_ts < b.priority_ts;
  return id_less(a.id, b.id);
}

// ---------------------------------------------------------------------------
// AuctionBook

AuctionBook::AuctionBook(PriceGrid grid) : grid_(grid) {}

void AuctionBook::add_volume(const RestingOrder& o, Shares q) {
  if (o.inert() || q == 0) return;
  if (!o.price) {
    (o.side == Side::kBuy ? buy_market_ : sell_market_) += q;
    return;
  }
  auto [it, inserted] = levels_.try_emplace(*o.price, DepthLevel{*o.price, 0, 0});
  (o.side == Side::kBuy ? it->second.buy : it->second.sell) += q;
  if (it->second.total() == 0) levels_.erase(it);
}

std::optional<Tick> AuctionBook::resolve_price(const OrderEvent& ev) const {
  switch (ev.type) {
    case OrderType::kMarket:
      return std::nullopt;
    case OrderType::kLimit:
      if (!ev.price_units) throw Error(ErrorCode::kMissingPrice, "limit order " + ev.order_id + " has no price");
      return grid_.to_tick(*ev.price_units);
    case OrderType::kValidForAuction:
    case OrderType::kValidForClosing:
    case OrderType::kStop:
      if (!ev.price_units) return std::nullopt;
      return grid_.to_tick(*ev.price_units);
  }
  return std::nullopt;
}

void AuctionBook::apply(const OrderEvent& ev) {
  switch (ev.action) {
    case Action::kSubmit: {
      if (ev.quantity < 1) throw Error(ErrorCode::kNonPositiveQuantity, "order " + ev.order_id);
      if (orders_.contains(ev.order_id)) throw Error(ErrorCode::kDuplicateOrderId, "order " + ev.order_id);
      RestingOrder o;
      o.id = ev.order_id;
      o.side = ev.side;
      o.type = ev.type;
      o.price = resolve_price(ev);
      o.quantity = ev.quantity;
      o.submit_ts = ev.timestamp_us;
      o.priority_ts = ev.timestamp_us;
      o.latency = ev.latency;
      o.account = ev.account;
      if (!o.inert()) {
        (o.side == Side::kBuy ? buy_flow_ : sell_flow_).submitted += o.quantity;
      }
      add_volume(o, o.quantity);
      orders_.emplace(o.id, std::move(o));
      return;
    }
    case Action::kModify: {
      auto it = orders_.find(ev.order_id);
      if (it == orders_.end()) throw Error(ErrorCode::kUnknownOrderId, "modify of " + ev.order_id);
      RestingOrder& o = it->second;
      if (ev.side != o.side) throw Error(ErrorCode::kSideMismatch, "modify of " + ev.order_id);
      if (ev.quantity < 1) throw Error(ErrorCode::kNonPositiveQuantity, "modify of " + ev.order_id);
      const std::optional<Tick> new_price = resolve_price(ev);

      RestingOrder updated = o;
      updated.type = ev.type;
      updated.price = new_price;
      updated.quantity = ev.quantity;

      FlowTotals& flow = o.side == Side::kBuy ? buy_flow_ : sell_flow_;
      const bool was_active = !o.inert();
      const bool now_active = !updated.inert();
      bool lose_priority = false;
      if (was_active && now_active) {
        const bool moved = o.price != updated.price;
        if (moved || updated.quantity > o.quantity) lose_priority = true;
        if (updated.quantity > o.quantity) flow.submitted += updated.quantity - o.quantity;
        if (updated.quantity < o.quantity) flow.decremented += o.quantity - updated.quantity;
      } else if (!was_active && now_active) {
        lose_priority = true;
        flow.submitted += updated.quantity;
      } else if (was_active && !now_active) {
        flow.decremented += o.quantity;
      }
      if (lose_priority) updated.priority_ts = ev.timestamp_us;

      add_volume(o, -o.quantity);
      add_volume(updated, updated.quantity);
      o = std::move(updated);
      return;
    }
    case Action::kCancel: {
      auto it = orders_.find(ev.order_id);
      if (it == orders_.end()) throw Error(ErrorCode::kUnknownOrderId, "cancel of " + ev.order_id);
      const RestingOrder& o = it->second;
      if (!o.inert()) (o.side == Side::kBuy ? buy_flow_ : sell_flow_).canceled += o.quantity;
      add_volume(o, -o.quantity);
      orders_.erase(it);
      return;
    }
  }
}

Shares AuctionBook::volume(Side s, Tick t) const noexcept {
  auto it = levels_.find(t);
  return it == levels_.end() ? 0 : it->second.on(s);
}

Shares AuctionBook::supply(Tick t) const noexcept {
  Shares sum = sell_market_;
  for (auto it = levels_.begin(); it != levels_.end() && it->first <= t; ++it) sum += it->second.sell;
  return sum;
}

Shares AuctionBook::demand(Tick t) const noexcept {
  Shares sum = buy_market_;
  for (auto it = levels_.lower_bound(t); it != levels_.end(); ++it) sum += it->second.buy;
  return sum;
}

Depth AuctionBook::depth() const {
  std::vector<DepthLevel> lv;
  lv.reserve(levels_.size());
  for (const auto& [tick, level] : levels_) lv.push_back(level);
  return Depth(grid_, std::move(lv), buy_market_, sell_market_);
}

Depth AuctionBook::depth_if(const std::function<bool(const RestingOrder&)>& keep) const {
  std::map<Tick, DepthLevel> lv;
  Shares bm = 0;
  Shares sm = 0;
  for (const auto& [id, o] : orders_) {
    if (o.inert() || !keep(o)) continue;
    if (!o.price) {
      (o.side == Side::kBuy ? bm : sm) += o.quantity;
      continue;
    }
    auto [it, inserted] = lv.try_emplace(*o.price, DepthLevel{*o.price, 0, 0});
    (o.side == Side::kBuy ? it->second.buy : it->second.sell) += o.quantity;
  }
  std::vector<DepthLevel> out;
  out.reserve(lv.size());
  for (const auto& [t, l] : lv) out.push_back(l);
  return Depth(grid_, std::move(out), bm, sm);
}

const RestingOrder* AuctionBook::find(std::string_view order_id) const {
  auto it = orders_.find(std::string(order_id));
  return it == orders_.end() ? nullptr : &it->second;
}

std::vector<const RestingOrder*> AuctionBook::queue(Side s, std::optional<Tick> price) const {
  std::vector<const RestingOrder*> out;
  for (const auto& [id, o] : orders_) {
    if (o.inert() || o.side != s || o.price != price) continue;
    out.push_back(&o);
  }
  std::sort(out.begin(), out.end(), [](const RestingOrder* a, const RestingOrder* b) { return priority_before(*a, *b); });
  return out;
}

Shares AuctionBook::live_shares(Side s) const noexcept {
  Shares sum = market_total(s);
  for (const auto& [t, l] : levels_) sum += l.on(s);
  return sum;
}

AuctionBook apply_event(AuctionBook book, const OrderEvent& ev) {
  book.apply(ev);
  return book;
}

AuctionBook replay(const PriceGrid& grid, std::span<const OrderEvent> events, std::optional<std::int64_t> until_us) {
  AuctionBook book(grid);
  for (const auto& ev : events) {
    if (until_us && ev.timestamp_us > *until_us) break;
    book.apply(ev);
  }
  return book;
}

}  // namespace auction
