#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "auction/book.hpp"
#include "auction/clearing.hpp"

namespace auction {

struct IndicativePoint {
  std::int64_t t_us = 0;
  std::optional<Tick> price;  // nullopt when the book does not cross at t
  Shares volume = 0;

  friend bool operator==(const IndicativePoint&, const IndicativePoint&) = default;
};

struct SeriesOptions {
  std::int64_t interval_us = 5'000'000;
  // First snapshot is taken at start + interval; defaults to the first event.
  std::optional<std::int64_t> start_us;
  // Final snapshot (the auction clearing); defaults to the last event.
  std::optional<std::int64_t> end_us;
};

// Snapshot instants: start + k * interval strictly before end, then end.
std::vector<std::int64_t> snapshot_times(std::span<const OrderEvent> events, const SeriesOptions& opts);

// Replays time-sorted `events` once and calls `visit` with the book state at
// each instant in `times` (ascending); the state includes every event with
// timestamp <= t.
void for_each_snapshot(const PriceGrid& grid, std::span<const OrderEvent> events, std::span<const std::int64_t> times,
                       const std::function<void(std::int64_t, const AuctionBook&)>& visit);

std::vector<IndicativePoint> indicative_series(const PriceGrid& grid, std::span<const OrderEvent> events,
                                               const SeriesOptions& opts,
                                               std::optional<Tick> reference = std::nullopt);

}  // namespace auction
