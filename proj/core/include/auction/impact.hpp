#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "auction/book.hpp"
#include "auction/clearing.hpp"

namespace auction {

namespace detail {
__extension__ typedef __int128 WideInt;
}  // namespace detail

// Scaled volume num / den kept exact; den is the auction volume and > 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
    const detail::WideInt l = static_cast<detail::WideInt>(a.num) * b.den;
    const detail::WideInt r = static_cast<detail::WideInt>(b.num) * a.den;
    return l <=> r;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) noexcept { return (a <=> b) == 0; }
};

struct Breakpoint {
  Ratio omega;        // injected volume / Q_a at which the price jumps
  Tick price;         // auction price from omega on
  double impact = 0;  // |log(price / p_a)|
};

// Step impact function of a market order on one side of a cleared book.
// Breakpoint 0 sits at omega0 and moves the price to the first non-empty tick
// beyond p_a; breakpoint i adds that tick's total volume / Q_a. Only
// breakpoints whose price lies within max_x of p_a (in |log|) are kept, and
// `limit` is where the next, untracked jump would happen.
struct ImpactCurve {
  Side side = Side::kBuy;
  PriceGrid grid{1};
  Tick auction_price;
  Shares auction_volume = 0;
  double max_x = 0;
  Ratio omega0;
  std::vector<Breakpoint> breakpoints;
  Ratio limit;
};

inline constexpr double kDefaultMaxX = 0.02;

// Throws kDegenerateAuction if the clearing volume is not positive and
// kInvalidArgument if max_x <= 0.
ImpactCurve impact_curve(const Depth& depth, const ClearingResult& clearing, Side side, double max_x = kDefaultMaxX);

// Log-price impact of a market order of scaled size omega: 0 below omega0,
// then the impact of the last breakpoint <= omega. Throws kBeyondTruncation
// for omega >= curve.limit (omega = 0 always gives 0) and kInvalidArgument for
// negative omega.
double impact_at(const ImpactCurve& curve, Ratio omega);
double impact_at(const ImpactCurve& curve, double omega);

// Auction price after adding q unpriced shares on `side` and clearing again
// with the full rule chain. The input is not modified.
Tick inject_and_reclear(const Depth& depth, Side side, Shares q, std::optional<Tick> reference = std::nullopt);

// Same after removing q shares from the market total of `side`.
Tick cancel_and_reclear(const Depth& depth, Side side, Shares q, std::optional<Tick> reference = std::nullopt);

// 1 / (p1 * L). Throws kZeroLiquidity unless both are positive and finite.
double theoretical_slope(double p1, double l_tilde);

// Positive root of b1/2 x^2 + a1 x - q = 0 (x = q / a1 when b1 = 0).
// Throws kNoPositiveRoot when there is none and kInvalidArgument for a1 < 0
// or q <= 0.
double post_clearing_impact(double a1, double b1, double q);

// omega * Q_a * p_a. Throws kInvalidArgument on negative input.
double cash_volume(double omega, double auction_volume, double auction_price);

}  // namespace auction
