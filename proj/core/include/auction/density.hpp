#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auction/book.hpp"
#include "auction/clearing.hpp"

namespace auction {

inline constexpr double kBasisPoint = 1e-4;

struct DensityPoint {
  Tick tick;
  double log_price = 0;  // log(p / auction price)
  double gap = 0;        // delta p in currency units
  double density = 0;    // V / delta p, shares per currency unit
  double scaled = 0;     // density / auction volume
};

// Per-tick density of one side. For buys the gap runs to the next non-empty
// buy tick above, for sells to the previous non-empty sell tick below; the
// extreme tick of a side uses one tick size. Throws kEmptySide if the side
// has no resting limit volume and kDegenerateAuction if auction_volume <= 0.
std::vector<DensityPoint> density(const Depth& depth, Side side, Tick auction_price, Shares auction_volume);

// Combined buy+sell scaled density on the non-empty ticks strictly beyond the
// auction price in the direction of `side` (above for buys, below for sells)
// with |log(p / p_a)| <= max_x. The gap of each tick runs to the next
// non-empty tick further from p_a (one tick size at the last), so a run of
// consecutive ticks holding V_c shares each has density V_c / (Q_a * tick).
std::vector<DensityPoint> total_density(const Depth& depth, Side side, Tick auction_price, Shares auction_volume,
                                        double max_x);

struct DensityBin {
  double rho_buy = 0;
  double rho_sell = 0;
  std::size_t n_days = 0;  // days with resting volume in the bin
};

// Scaled density averaged over days on centred log-price bins; bin k covers
// x in [(k - 1/2) dx, (k + 1/2) dx). Days with nothing in a bin count as zero.
struct DensityProfile {
  double bin_width = kBasisPoint;
  std::size_t day_count = 0;
  std::optional<std::string> group;
  std::map<std::int64_t, DensityBin> bins;
};

enum class Grouping { kNone, kLatency, kAccount };

// One day's profile(s), volumes scaled by the day's Q_a and prices by p_a.
// With a grouping, one profile per flag value (empty ones included) in enum
// order.
std::vector<DensityProfile> day_profiles(const AuctionBook& book, const ClearingResult& clearing, double bin_width,
                                         Grouping grouping = Grouping::kNone);
DensityProfile day_profile(const Depth& depth, const ClearingResult& clearing, double bin_width);

// Per-bin mean over days. All inputs must share bin width and group label;
// throws kMismatchedBinning otherwise and kEmptyBatch on no input.
DensityProfile average_density(std::span<const DensityProfile> profiles);

// Splits by group label and averages each; output ordered by first appearance.
std::vector<DensityProfile> average_by_group(std::span<const DensityProfile> profiles);

}  // namespace auction
