#include "auction/indicative.hpp"

#include "auction/error.hpp"

namespace auction {

std::vector<std::int64_t> snapshot_times(std::span<const OrderEvent> events, const SeriesOptions& opts) {
  if (opts.interval_us <= 0) throw Error(ErrorCode::kInvalidArgument, "snapshot interval must be positive");
  if (events.empty() && (!opts.start_us || !opts.end_us)) {
    throw Error(ErrorCode::kInvalidArgument, "empty log needs explicit start and end");
  }
  const std::int64_t start = opts.start_us.value_or(events.empty() ? 0 : events.front().timestamp_us);
  const std::int64_t end = opts.end_us.value_or(events.empty() ? 0 : events.back().timestamp_us);
  if (end < start) throw Error(ErrorCode::kInvalidArgument, "series end precedes start");

  std::vector<std::int64_t> times;
  for (std::int64_t t = start + opts.interval_us; t < end; t += opts.interval_us) times.push_back(t);
  times.push_back(end);
  return times;
}

void for_each_snapshot(const PriceGrid& grid, std::span<const OrderEvent> events, std::span<const std::int64_t> times,
                       const std::function<void(std::int64_t, const AuctionBook&)>& visit) {
  AuctionBook book(grid);
  std::size_t next = 0;
  for (std::int64_t t : times) {
    while (next < events.size() && events[next].timestamp_us <= t) book.apply(events[next++]);
    visit(t, book);
  }
}

std::vector<IndicativePoint> indicative_series(const PriceGrid& grid, std::span<const OrderEvent> events,
                                               const SeriesOptions& opts, std::optional<Tick> reference) {
  const auto times = snapshot_times(events, opts);
  std::vector<IndicativePoint> out;
  out.reserve(times.size());
  for_each_snapshot(grid, events, times, [&](std::int64_t t, const AuctionBook& book) {
    IndicativePoint p{t, std::nullopt, 0};
    try {
      const auto r = clear(book.depth(), reference);
      p.price = r.price();
      p.volume = r.volume();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoCross) throw;
    }
    out.push_back(p);
  });
  return out;
}

}  // namespace auction
