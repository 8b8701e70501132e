#include "auction/flowgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "auction/book.hpp"
#include "auction/clearing.hpp"
#include "auction/error.hpp"

namespace auction {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInfeasibleConfig, what);
}

void validate_shape(const ShapeConfig& s) {
  require(s.volume_per_tick >= 0, "volume_per_tick must be >= 0");
  require(s.delta_star_bp >= 0, "delta_star_bp must be >= 0");
  require(s.decay_per_bp >= 0, "decay_per_bp must be >= 0");
  require(s.total_shares >= 0, "total_shares must be >= 0");
  require(s.width_bp > 0, "width_bp must be positive");
}

void validate(const FlowConfig& c) {
  require(c.tick_size > 0, "tick_size must be positive");
  require(c.fundamental_price > c.tick_size, "fundamental_price must exceed the tick size");
  require(c.earliest_clear_us - c.start_us >= 2, "accumulation window too short");
  require(c.earliest_clear_us <= c.latest_clear_us, "earliest clear after latest clear");
  require(c.half_width_bp > 0, "half_width_bp must be positive");
  require(c.side_split_bp > 0, "side_split_bp must be positive");
  require(c.peak_mass >= 0 && c.peak_mass < 1, "peak_mass must lie in [0, 1)");
  require(c.market_fraction >= 0 && c.market_fraction <= 1, "market_fraction must lie in [0, 1]");
  require(c.cancel_rate >= 0, "cancel_rate must be >= 0");
  require(c.modify_rate >= 0 && c.modify_rate <= 1, "modify_rate must lie in [0, 1]");
  require(c.max_order_size >= 1, "max_order_size must be >= 1");
  auto weights_ok = [](const auto& w) {
    double sum = 0;
    for (double v : w) {
      if (!(v >= 0)) return false;
      sum += v;
    }
    return sum > 0;
  };
  require(weights_ok(c.latency_weights), "latency weights must be non-negative with a positive sum");
  require(weights_ok(c.account_weights), "account weights must be non-negative with a positive sum");
  validate_shape(c.upper);
  validate_shape(c.lower);
}

struct Planned {
  std::string id;
  Side side = Side::kBuy;
  OrderType type = OrderType::kLimit;
  std::optional<Tick> price;
  Shares qty = 0;
  LatencyFlag latency = LatencyFlag::kNon;
  AccountType account = AccountType::kClient;
};

}  // namespace

Shares shape_volume(const ShapeConfig& shape, double x_bp, double tick_bp) {
  switch (shape.kind) {
    case ShapeKind::kConstant:
      return shape.volume_per_tick;
    case ShapeKind::kPiecewise: {
      if (x_bp <= shape.delta_star_bp) return shape.volume_per_tick;
      const double v = static_cast<double>(shape.volume_per_tick) * std::exp(-shape.decay_per_bp * (x_bp - shape.delta_star_bp));
      return std::llround(v);
    }
    case ShapeKind::kSkewedBell: {
      // Skew-normal density restricted to x >= 0 and renormalised there.
      const double z = x_bp / shape.width_bp;
      const double phi = std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi);
      const double cdf = 0.5 * std::erfc(-shape.skew * z / std::numbers::sqrt2);
      const double pdf = 2.0 / shape.width_bp * phi * cdf;
      const double half_mass = 0.5 + std::atan(shape.skew) / std::numbers::pi;
      return std::llround(static_cast<double>(shape.total_shares) * tick_bp * pdf / half_mass);
    }
  }
  return 0;
}

GeneratedFlow generate(const FlowConfig& cfg) {
  validate(cfg);
  GeneratedFlow out;
  out.grid = PriceGrid::from_tick_size(cfg.tick_size);
  const PriceGrid& grid = out.grid;
  const Tick fundamental = grid.nearest(cfg.fundamental_price);
  const double fv = grid.value(fundamental);
  const double tick_bp = 1e4 * grid.tick_size() / fv;

  std::mt19937_64 rng(cfg.seed);

  // Per-tick buy/sell volumes.
  std::vector<DepthLevel> levels;
  Shares shaped = 0;
  for (int dir : {-1, 1}) {
    const ShapeConfig& shape = dir > 0 ? cfg.upper : cfg.lower;
    for (std::int64_t k = 1;; ++k) {
      const Tick t = fundamental + dir * k;
      const double p = grid.value(t);
      if (p <= 0) break;
      const double x_bp = 1e4 * std::log(p / fv);
      if (std::abs(x_bp) > cfg.half_width_bp) break;
      const Shares v = shape_volume(shape, std::abs(x_bp), tick_bp);
      if (v <= 0) continue;
      const double buy_frac = 1.0 / (1.0 + std::exp(x_bp / cfg.side_split_bp));
      const Shares buy = std::llround(static_cast<double>(v) * buy_frac);
      levels.push_back({t, buy, v - buy});
      shaped += v;
    }
  }
  if (shaped == 0) throw Error(ErrorCode::kInfeasibleConfig, "shapes place no shares on the book");
  const Shares peak = std::llround(cfg.peak_mass * static_cast<double>(shaped) / (1.0 - cfg.peak_mass));
  if (peak > 0) levels.push_back({fundamental, peak / 2, peak - peak / 2});

  std::discrete_distribution<int> latency_dist(cfg.latency_weights.begin(), cfg.latency_weights.end());
  std::discrete_distribution<int> account_dist(cfg.account_weights.begin(), cfg.account_weights.end());
  std::uniform_int_distribution<Shares> size_dist(1, cfg.max_order_size);
  std::uint64_t next_id = 1;

  std::vector<Planned> orders;
  auto plan = [&](Side side, std::optional<Tick> price, Shares total) {
    while (total > 0) {
      const Shares q = std::min(total, size_dist(rng));
      Planned o;
      o.id = std::to_string(next_id++);
      o.side = side;
      o.type = price ? OrderType::kLimit : OrderType::kMarket;
      o.price = price;
      o.qty = q;
      o.latency = kAllLatencyFlags[latency_dist(rng)];
      o.account = kAllAccountTypes[account_dist(rng)];
      orders.push_back(std::move(o));
      total -= q;
    }
  };
  std::sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.tick < b.tick; });
  Shares limit_buy = 0, limit_sell = 0;
  for (const auto& l : levels) {
    plan(Side::kBuy, l.tick, l.buy);
    plan(Side::kSell, l.tick, l.sell);
    limit_buy += l.buy;
    limit_sell += l.sell;
  }
  plan(Side::kBuy, std::nullopt, std::llround(cfg.market_fraction * static_cast<double>(limit_buy)));
  plan(Side::kSell, std::nullopt, std::llround(cfg.market_fraction * static_cast<double>(limit_sell)));

  const std::int64_t last_us = cfg.earliest_clear_us - 1;
  std::uniform_int_distribution<std::int64_t> time_dist(cfg.start_us, last_us);
  std::uniform_int_distribution<std::int64_t> early_dist(cfg.start_us, last_us - 1);
  auto later = [&](std::int64_t t) { return std::uniform_int_distribution<std::int64_t>(t + 1, last_us)(rng); };
  std::bernoulli_distribution modify_dist(cfg.modify_rate);
  std::uniform_int_distribution<int> offset_dist(1, 3);
  std::bernoulli_distribution coin(0.5);

  auto event = [&](std::int64_t t, Action a, const Planned& o, std::optional<Tick> price, Shares qty) {
    OrderEvent ev;
    ev.timestamp_us = t;
    ev.order_id = o.id;
    ev.action = a;
    ev.side = o.side;
    ev.type = o.type;
    if (price) ev.price_units = grid.units(*price);
    ev.quantity = qty;
    ev.latency = o.latency;
    ev.account = o.account;
    return ev;
  };

  std::vector<OrderEvent>& events = out.events;
  const std::size_t n_resting = orders.size();
  for (std::size_t i = 0; i < n_resting; ++i) {
    const Planned& o = orders[i];
    if (o.price && modify_dist(rng)) {
      // Starts elsewhere, reaches its final state through one MODIFY.
      const int off = offset_dist(rng) * (coin(rng) ? 1 : -1);
      Tick first = *o.price + off;
      if (grid.value(first) <= 0) first = *o.price + std::abs(off);
      const Shares first_qty = std::uniform_int_distribution<Shares>(1, 2 * o.qty)(rng);
      const std::int64_t t1 = early_dist(rng);
      events.push_back(event(t1, Action::kSubmit, o, first, first_qty));
      events.push_back(event(later(t1), Action::kModify, o, o.price, o.qty));
    } else {
      events.push_back(event(time_dist(rng), Action::kSubmit, o, o.price, o.qty));
    }
  }

  if (cfg.cancel_rate > 0 && n_resting > 0) {
    std::poisson_distribution<std::int64_t> n_dist(cfg.cancel_rate * static_cast<double>(n_resting));
    const std::int64_t n_extra = n_dist(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n_resting - 1);
    for (std::int64_t k = 0; k < n_extra; ++k) {
      Planned o = orders[pick(rng)];
      o.id = std::to_string(next_id++);
      o.qty = size_dist(rng);
      o.latency = kAllLatencyFlags[latency_dist(rng)];
      o.account = kAllAccountTypes[account_dist(rng)];
      const std::int64_t t1 = early_dist(rng);
      events.push_back(event(t1, Action::kSubmit, o, o.price, o.qty));
      OrderEvent cancel = event(later(t1), Action::kCancel, o, std::nullopt, 0);
      events.push_back(cancel);
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const OrderEvent& a, const OrderEvent& b) { return a.timestamp_us < b.timestamp_us; });

  GroundTruth& truth = out.truth;
  truth.peak_mass = cfg.peak_mass;
  truth.clear_time_us = std::uniform_int_distribution<std::int64_t>(cfg.earliest_clear_us, cfg.latest_clear_us)(rng);
  truth.tick_size = grid.tick_size();
  truth.fundamental_price = fv;
  truth.seed = cfg.seed;
  try {
    const auto result = clear(replay(grid, events), fundamental);
    truth.p_a = grid.format(result.price());
    truth.q_a = result.volume();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoCross) throw;
    throw Error(ErrorCode::kInfeasibleConfig, "generated book does not cross");
  }
  if (cfg.upper.kind != ShapeKind::kSkewedBell && cfg.upper.volume_per_tick > 0) {
    truth.l_star = static_cast<double>(cfg.upper.volume_per_tick) /
                   (static_cast<double>(truth.q_a) * grid.tick_size());
  }
  if (cfg.upper.kind == ShapeKind::kPiecewise) truth.delta_star_bp = cfg.upper.delta_star_bp;
  return out;
}

}  // namespace auction
