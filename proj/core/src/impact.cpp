#include "auction/impact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "auction/error.hpp"

namespace auction {

ImpactCurve impact_curve(const Depth& depth, const ClearingResult& clearing, Side side, double max_x) {
  const Shares q = clearing.volume();
  if (q <= 0) throw Error(ErrorCode::kDegenerateAuction, "auction volume must be positive");
  if (!(max_x > 0)) throw Error(ErrorCode::kInvalidArgument, "max_x must be positive");

  const auto& grid = depth.grid();
  const Tick pa = clearing.price();
  const double pa_value = grid.value(pa);

  ImpactCurve c;
  c.side = side;
  c.grid = grid;
  c.auction_price = pa;
  c.auction_volume = q;
  c.max_x = max_x;

  // Injecting on one side shifts S - D by the injected amount; the price
  // leaves p_a once the opposite excess plus the side's own volume at p_a is
  // used up. Without spill this is V_S^R + V_B^M (buy) or V_S^M + V_B^R (sell).
  const Shares s = clearing.supply_at_price();
  const Shares d = clearing.demand_at_price();
  Shares num = side == Side::kBuy ? s - d + clearing.at_price(Side::kBuy) : d - s + clearing.at_price(Side::kSell);
  num = std::max<Shares>(num, 0);
  c.omega0 = {num, q};

  std::vector<const DepthLevel*> beyond;
  const auto& lv = depth.levels();
  if (side == Side::kBuy) {
    for (const auto& l : lv) {
      if (l.tick > pa) beyond.push_back(&l);
    }
  } else {
    for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
      if (it->tick < pa) beyond.push_back(&*it);
    }
  }

  for (const DepthLevel* l : beyond) {
    const double impact = std::abs(std::log(grid.value(l->tick) / pa_value));
    if (impact > max_x) break;
    c.breakpoints.push_back({{num, q}, l->tick, impact});
    num += l->total();
  }
  c.limit = {num, q};
  return c;
}

namespace {

// Shared step lookup; `below(w, r)` tells whether omega w is < ratio r.
template <typename Omega, typename Below>
double step_lookup(const ImpactCurve& curve, Omega omega, Below below) {
  if (below(omega, curve.omega0)) return 0.0;
  if (!below(omega, curve.limit)) {
    throw Error(ErrorCode::kBeyondTruncation, "scaled volume beyond the last computed breakpoint");
  }
  const auto& bp = curve.breakpoints;
  auto it = std::upper_bound(bp.begin(), bp.end(), omega,
                             [&](Omega w, const Breakpoint& b) { return below(w, b.omega); });
  return std::prev(it)->impact;
}

}  // namespace

double impact_at(const ImpactCurve& curve, Ratio omega) {
  if (omega.num < 0) throw Error(ErrorCode::kInvalidArgument, "negative scaled volume");
  if (omega.num == 0) return 0.0;
  return step_lookup(curve, omega, [](Ratio w, const Ratio& r) { return w < r; });
}

double impact_at(const ImpactCurve& curve, double omega) {
  if (!(omega >= 0)) throw Error(ErrorCode::kInvalidArgument, "negative scaled volume");
  if (omega == 0.0) return 0.0;
  return step_lookup(curve, omega, [](double w, const Ratio& r) { return w < r.value(); });
}

Tick inject_and_reclear(const Depth& depth, Side side, Shares q, std::optional<Tick> reference) {
  if (q < 0) throw Error(ErrorCode::kInvalidArgument, "injected volume must be >= 0");
  return clear(depth.with_market(side, q), reference).price();
}

Tick cancel_and_reclear(const Depth& depth, Side side, Shares q, std::optional<Tick> reference) {
  if (q < 0) throw Error(ErrorCode::kInvalidArgument, "canceled volume must be >= 0");
  return clear(depth.with_market(side, -q), reference).price();
}

double theoretical_slope(double p1, double l_tilde) {
  if (!(p1 > 0) || !(l_tilde > 0) || !std::isfinite(p1) || !std::isfinite(l_tilde)) {
    throw Error(ErrorCode::kZeroLiquidity, "slope needs positive p1 and liquidity");
  }
  return 1.0 / (p1 * l_tilde);
}

double post_clearing_impact(double a1, double b1, double q) {
  if (!(a1 >= 0) || !(q > 0)) throw Error(ErrorCode::kInvalidArgument, "need a1 >= 0 and q > 0");
  const double disc = a1 * a1 + 2.0 * b1 * q;
  if (disc < 0) throw Error(ErrorCode::kNoPositiveRoot, "negative discriminant");
  // 2q / (a1 + sqrt(disc)) equals (-a1 + sqrt(disc)) / b1 without the
  // cancellation for small b1 and covers b1 = 0.
  const double denom = a1 + std::sqrt(disc);
  if (!(denom > 0)) throw Error(ErrorCode::kNoPositiveRoot, "no positive root");
  return 2.0 * q / denom;
}

double cash_volume(double omega, double auction_volume, double auction_price) {
  if (omega < 0 || auction_volume < 0 || auction_price < 0) {
    throw Error(ErrorCode::kInvalidArgument, "cash volume inputs must be non-negative");
  }
  return omega * auction_volume * auction_price;
}

}  // namespace auction
