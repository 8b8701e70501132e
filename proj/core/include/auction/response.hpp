#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "auction/book.hpp"
#include "auction/clearing.hpp"

namespace auction {

struct Marketability {
  Side side = Side::kBuy;  // side of the order itself
  Action kind = Action::kSubmit;
  int epsilon = 1;
  Shares quantity = 0;
};

// Whether `ev` is a marketable submission or the cancellation of a marketable
// resting order, judged against the indicative price p_ind of `before` (the
// state just prior to the event). Market orders always qualify; a buy limit
// qualifies at price >= p_ind, a sell limit at price <= p_ind. Sign: +1 for
// buy submits and sell cancels, -1 otherwise. MODIFY events and unknown
// cancel ids yield nullopt.
std::optional<Marketability> classify_marketable(const OrderEvent& ev, const AuctionBook& before, Tick p_ind);

struct MarketableEvent {
  std::int64_t t_us = 0;
  int epsilon = 1;
  Side side = Side::kBuy;
  Action kind = Action::kSubmit;
  Shares quantity = 0;
  Shares q_before = 0;  // indicative volume before the event
  double omega = 0;     // quantity / q_before
  Tick p_before;
  Tick p_after;
  Tick p_next;
  // Price if the same quantity were injected (submit) or removed (cancel) as
  // a market order on the pre-event book; filled when requested.
  std::optional<Tick> p_virtual;
  // Signed moves in currency units: eps * (p_next - p_before),
  // eps * (p_after - p_before) and eps * (p_virtual - p_before).
  double move_next = 0;
  double move_mech = 0;
  std::optional<double> move_virtual;
};

struct LogBins {
  double lo = 1e-5;
  double hi = 1.0;
  std::size_t count = 30;

  // Bin of omega, or nullopt outside [lo, hi]. hi falls in the last bin.
  std::optional<std::size_t> index(double omega) const;
  double edge(std::size_t i) const;
};

struct ResponseOptions {
  std::int64_t warmup_us = 30'000'000;
  LogBins bins;
  bool with_cancels = true;
  bool virtual_impact = false;
  std::optional<Tick> reference;
};

struct ResponseBin {
  double lo = 0;
  double hi = 0;
  std::size_t count = 0;
  // Means in currency units, absent for empty bins.
  std::optional<double> r1;
  std::optional<double> rm;
  std::optional<double> r1_se;
  std::optional<double> rm_se;
  std::optional<double> diff_se;     // standard error of the paired r1 - rm
  std::optional<double> rv;          // mean virtual impact, when computed
  std::optional<double> rv_se;
};

struct ResponseResult {
  std::vector<ResponseBin> bins;
  std::vector<MarketableEvent> events;
  std::size_t skipped_no_cross = 0;
  std::size_t skipped_out_of_range = 0;
};

// Per-bin means and standard errors over events (possibly pooled from several
// days). Events outside the bin range are counted in *out_of_range.
std::vector<ResponseBin> bin_response(std::span<const MarketableEvent> events, const LogBins& bins,
                                      std::size_t* out_of_range = nullptr);

// One pass over a time-sorted log. Events before first timestamp + warmup
// only build the book. For each later marketable event, R1 uses the
// indicative price just before the next marketable event (the final state
// for the last one) and RM the price right after the event itself.
ResponseResult response_curves(const PriceGrid& grid, std::span<const OrderEvent> events,
                               const ResponseOptions& opts = {});

}  // namespace auction
