#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "auction/price_grid.hpp"

namespace auction {

enum class Side : std::uint8_t { kBuy, kSell };
enum class Action : std::uint8_t { kSubmit, kModify, kCancel };
enum class OrderType : std::uint8_t { kLimit, kMarket, kValidForAuction, kValidForClosing, kStop };
enum class LatencyFlag : std::uint8_t { kHft, kMix, kNon };
enum class AccountType : std::uint8_t { kOwn, kClient, kMarketMaker, kParent, kRmo, kRlp };

inline constexpr Side opposite(Side s) noexcept { return s == Side::kBuy ? Side::kSell : Side::kBuy; }
// +1 for buy, -1 for sell.
inline constexpr int sign(Side s) noexcept { return s == Side::kBuy ? 1 : -1; }

std::string_view to_string(Side v) noexcept;
std::string_view to_string(Action v) noexcept;
std::string_view to_string(OrderType v) noexcept;
std::string_view to_string(LatencyFlag v) noexcept;
std::string_view to_string(AccountType v) noexcept;

// Parsers throw Error(kParse) listing the accepted spellings.
Side parse_side(std::string_view s);
Action parse_action(std::string_view s);
OrderType parse_order_type(std::string_view s);
LatencyFlag parse_latency_flag(std::string_view s);
AccountType parse_account_type(std::string_view s);

inline constexpr LatencyFlag kAllLatencyFlags[] = {LatencyFlag::kHft, LatencyFlag::kMix, LatencyFlag::kNon};
inline constexpr AccountType kAllAccountTypes[] = {AccountType::kOwn,    AccountType::kClient,
                                                   AccountType::kMarketMaker, AccountType::kParent,
                                                   AccountType::kRmo,    AccountType::kRlp};

// One submit/modify/cancel message. The price is kept in fixed-point units
// rather than ticks so a log can be read before its grid is known; the book
// rejects off-grid prices when the event is applied.
struct OrderEvent {
  std::int64_t timestamp_us = 0;
  std::string order_id;
  Action action = Action::kSubmit;
  Side side = Side::kBuy;
  OrderType type = OrderType::kLimit;
  std::optional<std::int64_t> price_units;
  Shares quantity = 0;
  LatencyFlag latency = LatencyFlag::kNon;
  AccountType account = AccountType::kClient;

  friend bool operator==(const OrderEvent&, const OrderEvent&) = default;
};

}  // namespace auction
