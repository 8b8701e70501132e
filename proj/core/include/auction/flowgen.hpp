#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "auction/order_event.hpp"
#include "auction/price_grid.hpp"

namespace auction {

enum class ShapeKind { kConstant, kSkewedBell, kPiecewise };

// Total (buy + sell) resting volume per tick as a function of the log-price
// distance x from the fundamental price, on one half of the book.
struct ShapeConfig {
  ShapeKind kind = ShapeKind::kConstant;
  Shares volume_per_tick = 100;   // constant, piecewise
  double delta_star_bp = 50;      // piecewise: end of the constant window
  double decay_per_bp = 0.01;     // piecewise: log-volume decay rate beyond it
  Shares total_shares = 100'000;  // skewed bell: shares on this half
  double width_bp = 80;           // skewed bell: scale
  double skew = 2.0;              // skewed bell: skew-normal shape, > 0 leans away from the fundamental
};

struct FlowConfig {
  std::uint64_t seed = 1;
  double tick_size = 0.01;
  double fundamental_price = 100.0;
  std::int64_t start_us = 0;
  std::int64_t earliest_clear_us = 300'000'000;
  std::int64_t latest_clear_us = 330'000'000;
  double half_width_bp = 300;
  ShapeConfig upper;  // ticks above the fundamental
  ShapeConfig lower;  // ticks below it
  // Width in bp of the logistic buy fraction 1 / (1 + exp(x / w)).
  double side_split_bp = 5;
  double peak_mass = 0.1;  // fraction of all limit shares placed at the fundamental
  double market_fraction = 0.0;  // market shares per side / limit shares on that side
  Shares max_order_size = 100;
  double cancel_rate = 0.0;  // extra submit-then-cancel orders per resting order
  double modify_rate = 0.0;  // fraction of resting orders that reach their final state via MODIFY
  std::array<double, 3> latency_weights{0.2, 0.3, 0.5};                // HFT, MIX, NON
  std::array<double, 6> account_weights{0.1, 0.5, 0.1, 0.1, 0.1, 0.1};  // OWN .. RLP
};

struct GroundTruth {
  std::optional<double> delta_star_bp;  // piecewise shapes only
  std::optional<double> l_star;         // V_c / (Q_a * tick), when V_c is defined
  double peak_mass = 0;
  std::int64_t clear_time_us = 0;
  double tick_size = 0;
  double fundamental_price = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> p_a;  // clearing of the generated book
  Shares q_a = 0;
};

struct GeneratedFlow {
  PriceGrid grid{1};
  std::vector<OrderEvent> events;  // time-sorted
  GroundTruth truth;
};

// Deterministic for a fixed config. Throws kInfeasibleConfig on invalid
// parameters (bad window, fractions outside [0, 1), zero shares with a
// positive peak mass, ...).
GeneratedFlow generate(const FlowConfig& config);

// Total per-tick volume the shape assigns at distance x_bp (>= 0) from the
// fundamental, before the buy/sell split. Exposed for tests.
Shares shape_volume(const ShapeConfig& shape, double x_bp, double tick_bp);

FlowConfig flow_config_from_json(const std::string& text);
std::string to_json(const FlowConfig& config);
std::string to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(const std::string& text);

}  // namespace auction
