#pragma once

// Small builders shared by the unit, integration and acceptance tests.

#include <string>
#include <string_view>
#include <vector>

#include "auction/book.hpp"
#include "auction/order_event.hpp"
#include "auction/price_grid.hpp"

namespace fixture {

using namespace auction;

inline OrderEvent submit(std::int64_t ts, std::string id, Side side, std::string_view price, Shares qty,
                         OrderType type = OrderType::kLimit) {
  OrderEvent ev;
  ev.timestamp_us = ts;
  ev.order_id = std::move(id);
  ev.action = Action::kSubmit;
  ev.side = side;
  ev.type = price.empty() ? OrderType::kMarket : type;
  if (!price.empty()) ev.price_units = parse_price_units(price);
  ev.quantity = qty;
  return ev;
}

inline OrderEvent market(std::int64_t ts, std::string id, Side side, Shares qty) {
  return submit(ts, std::move(id), side, "", qty);
}

inline OrderEvent modify(std::int64_t ts, std::string id, Side side, std::string_view price, Shares qty,
                         OrderType type = OrderType::kLimit) {
  OrderEvent ev = submit(ts, std::move(id), side, price, qty, type);
  ev.action = Action::kModify;
  return ev;
}

inline OrderEvent cancel(std::int64_t ts, std::string id) {
  OrderEvent ev;
  ev.timestamp_us = ts;
  ev.order_id = std::move(id);
  ev.action = Action::kCancel;
  return ev;
}

inline PriceGrid tenth_grid() { return PriceGrid(parse_price_units("0.1")); }

// S: 30@10.0, 40@10.1, 50@10.2; B: 10@9.9, 20@10.0, 60@10.1. Clears at 10.1
// for 60 shares with 10 sell shares left at the auction price.
inline std::vector<OrderEvent> clearing_example() {
  return {
      submit(1, "s1", Side::kSell, "10.0", 30), submit(2, "s2", Side::kSell, "10.1", 40),
      submit(3, "s3", Side::kSell, "10.2", 50), submit(4, "b1", Side::kBuy, "9.9", 10),
      submit(5, "b2", Side::kBuy, "10.0", 20),  submit(6, "b3", Side::kBuy, "10.1", 60),
  };
}

inline Depth clearing_example_depth() { return replay(tenth_grid(), clearing_example()).depth(); }

}  // namespace fixture
