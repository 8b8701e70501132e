#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auction/order_event.hpp"
#include "auction/price_grid.hpp"

namespace auction {

inline constexpr std::string_view kEventLogHeader =
    "timestamp_us,order_id,action,side,order_type,price,qty,latency_flag,account_type";

// Reads the CSV order-log schema. Malformed rows raise Error(kParse) with the
// 1-based line number in the message. `source` only labels error messages.
std::vector<OrderEvent> read_event_log(std::istream& in, const std::string& source = "<input>");
std::vector<OrderEvent> read_event_log_file(const std::string& path);

void write_event_log(std::ostream& out, std::span<const OrderEvent> events);

// Largest tick (anchored at zero) on which every priced event lies: the gcd
// of all price units. nullopt when the log carries no prices.
std::optional<PriceGrid> infer_grid(std::span<const OrderEvent> events);

}  // namespace auction
