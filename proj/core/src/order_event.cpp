#include "auction/order_event.hpp"

#include <array>
#include <utility>

#include "auction/error.hpp"

namespace auction {
namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::pair<std::string_view, Enum>, N>& table,
                std::string_view what) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  std::string expected;
  for (const auto& [name, value] : table) {
    if (!expected.empty()) expected += ", ";
    expected += name;
  }
  throw Error(ErrorCode::kParse,
              "unknown " + std::string(what) + " '" + std::string(text) + "' (expected one of: " + expected + ")");
}

constexpr std::array<std::pair<std::string_view, Side>, 2> kSides{{{"B", Side::kBuy}, {"S", Side::kSell}}};
constexpr std::array<std::pair<std::string_view, Action>, 3> kActions{
    {{"SUBMIT", Action::kSubmit}, {"MODIFY", Action::kModify}, {"CANCEL", Action::kCancel}}};
constexpr std::array<std::pair<std::string_view, OrderType>, 5> kTypes{{{"LIMIT", OrderType::kLimit},
                                                                       {"MARKET", OrderType::kMarket},
                                                                       {"VALID_FOR_AUCTION", OrderType::kValidForAuction},
                                                                       {"VALID_FOR_CLOSING", OrderType::kValidForClosing},
                                                                       {"STOP", OrderType::kStop}}};
constexpr std::array<std::pair<std::string_view, LatencyFlag>, 3> kLatency{
    {{"HFT", LatencyFlag::kHft}, {"MIX", LatencyFlag::kMix}, {"NON", LatencyFlag::kNon}}};
constexpr std::array<std::pair<std::string_view, AccountType>, 6> kAccounts{{{"OWN", AccountType::kOwn},
                                                                            {"CLIENT", AccountType::kClient},
                                                                            {"MARKET_MAKER", AccountType::kMarketMaker},
                                                                            {"PARENT", AccountType::kParent},
                                                                            {"RMO", AccountType::kRmo},
                                                                            {"RLP", AccountType::kRlp}}};

template <typename Enum, std::size_t N>
std::string_view name_of(Enum v, const std::array<std::pair<std::string_view, Enum>, N>& table) noexcept {
  for (const auto& [name, value] : table) {
    if (value == v) return name;
  }
  return "?";
}

}  // namespace

std::string_view to_string(Side v) noexcept { return name_of(v, kSides); }
std::string_view to_string(Action v) noexcept { return name_of(v, kActions); }
std::string_view to_string(OrderType v) noexcept { return name_of(v, kTypes); }
std::string_view to_string(LatencyFlag v) noexcept { return name_of(v, kLatency); }
std::string_view to_string(AccountType v) noexcept { return name_of(v, kAccounts); }

Side parse_side(std::string_view s) { return parse_enum(s, kSides, "side"); }
Action parse_action(std::string_view s) { return parse_enum(s, kActions, "action"); }
OrderType parse_order_type(std::string_view s) { return parse_enum(s, kTypes, "order_type"); }
LatencyFlag parse_latency_flag(std::string_view s) { return parse_enum(s, kLatency, "latency_flag"); }
AccountType parse_account_type(std::string_view s) { return parse_enum(s, kAccounts, "account_type"); }

}  // namespace auction
