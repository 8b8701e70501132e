#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace auction {

using Shares = std::int64_t;

// Prices are carried as integer multiples of 1e-8 currency units so that
// on-grid checks and tick arithmetic are exact.
inline constexpr std::int64_t kPriceScale = 100'000'000;

// Index of a price on the grid: price = anchor + index * tick_size.
struct Tick {
  std::int64_t index = 0;

  friend constexpr auto operator<=>(Tick, Tick) = default;
  friend constexpr Tick operator+(Tick t, std::int64_t n) { return Tick{t.index + n}; }
  friend constexpr Tick operator-(Tick t, std::int64_t n) { return Tick{t.index - n}; }
  friend constexpr std::int64_t operator-(Tick a, Tick b) { return a.index - b.index; }
};

// Parses a plain decimal ("10.1", "48", "0.005") into fixed-point units.
// Throws Error(kParse) on malformed input or more than 8 fractional digits.
std::int64_t parse_price_units(std::string_view text);

// Shortest exact decimal rendering of fixed-point units ("10.1", "48").
std::string format_price_units(std::int64_t units);

class PriceGrid {
 public:
  // tick_units > 0; throws Error(kInvalidArgument) otherwise.
  explicit PriceGrid(std::int64_t tick_units, std::int64_t anchor_units = 0);

  static PriceGrid from_tick_size(double tick_size, double anchor = 0.0);

  std::int64_t tick_units() const noexcept { return tick_units_; }
  std::int64_t anchor_units() const noexcept { return anchor_units_; }
  double tick_size() const noexcept;

  // Throws Error(kOffGridPrice) when units is not anchor + k * tick.
  Tick to_tick(std::int64_t units) const;
  std::optional<Tick> try_tick(std::int64_t units) const noexcept;
  Tick parse(std::string_view text) const { return to_tick(parse_price_units(text)); }

  std::int64_t units(Tick t) const noexcept { return anchor_units_ + t.index * tick_units_; }
  double value(Tick t) const noexcept;
  std::string format(Tick t) const { return format_price_units(units(t)); }

  // Nearest grid tick to a currency value (used for reference prices that
  // arrive as floating point in configs).
  Tick nearest(double price) const noexcept;

  friend bool operator==(const PriceGrid&, const PriceGrid&) = default;

 private:
  std::int64_t tick_units_;
  std::int64_t anchor_units_;
};

}  // namespace auction
