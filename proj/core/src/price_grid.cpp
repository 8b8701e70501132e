#include "auction/price_grid.hpp"

#include <cmath>
#include <limits>

#include "auction/error.hpp"

namespace auction {

std::int64_t parse_price_units(std::string_view text) {
  auto fail = [&] { throw Error(ErrorCode::kParse, "malformed price '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }

  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool in_frac = false;
  constexpr std::int64_t kMaxWhole = std::numeric_limits<std::int64_t>::max() / kPriceScale / 10;

  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.') {
      if (in_frac) fail();
      in_frac = true;
      continue;
    }
    if (c < '0' || c > '9') fail();
    any_digit = true;
    if (in_frac) {
      if (++frac_digits > 8) fail();
      frac = frac * 10 + (c - '0');
    } else {
      if (whole > kMaxWhole) fail();
      whole = whole * 10 + (c - '0');
    }
  }
  if (!any_digit) fail();
  for (int i = frac_digits; i < 8; ++i) frac *= 10;

  const std::int64_t units = whole * kPriceScale + frac;
  return negative ? -units : units;
}

std::string format_price_units(std::int64_t units) {
  std::string out;
  if (units < 0) {
    out.push_back('-');
    units = -units;
  }
  out += std::to_string(units / kPriceScale);
  std::int64_t frac = units % kPriceScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 8 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out.push_back('.');
    out += digits;
  }
  return out;
}

PriceGrid::PriceGrid(std::int64_t tick_units, std::int64_t anchor_units)
    : tick_units_(tick_units), anchor_units_(anchor_units) {
  if (tick_units <= 0) throw Error(ErrorCode::kInvalidArgument, "tick size must be positive");
}

PriceGrid PriceGrid::from_tick_size(double tick_size, double anchor) {
  const auto tick = static_cast<std::int64_t>(std::llround(tick_size * static_cast<double>(kPriceScale)));
  const auto anc = static_cast<std::int64_t>(std::llround(anchor * static_cast<double>(kPriceScale)));
  return PriceGrid(tick, anc);
}

double PriceGrid::tick_size() const noexcept {
  return static_cast<double>(tick_units_) / static_cast<double>(kPriceScale);
}

std::optional<Tick> PriceGrid::try_tick(std::int64_t units) const noexcept {
  const std::int64_t offset = units - anchor_units_;
  if (offset % tick_units_ != 0) return std::nullopt;
  return Tick{offset / tick_units_};
}

Tick PriceGrid::to_tick(std::int64_t units) const {
  if (auto t = try_tick(units)) return *t;
  throw Error(ErrorCode::kOffGridPrice,
              "price " + format_price_units(units) + " is not on the grid (tick " +
                  format_price_units(tick_units_) + ")");
}

double PriceGrid::value(Tick t) const noexcept {
  return static_cast<double>(units(t)) / static_cast<double>(kPriceScale);
}

Tick PriceGrid::nearest(double price) const noexcept {
  const double offset = price * static_cast<double>(kPriceScale) - static_cast<double>(anchor_units_);
  return Tick{static_cast<std::int64_t>(std::llround(offset / static_cast<double>(tick_units_)))};
}

}  // namespace auction
