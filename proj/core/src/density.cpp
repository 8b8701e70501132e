#include "auction/density.hpp"

#include <cmath>

#include "auction/error.hpp"

namespace auction {

std::vector<DensityPoint> density(const Depth& depth, Side side, Tick auction_price, Shares auction_volume) {
  if (auction_volume <= 0) throw Error(ErrorCode::kDegenerateAuction, "auction volume must be positive");
  const auto& grid = depth.grid();
  std::vector<Tick> ticks;
  for (const auto& l : depth.levels()) {
    if (l.on(side) > 0) ticks.push_back(l.tick);
  }
  if (ticks.empty()) throw Error(ErrorCode::kEmptySide, std::string("no resting volume on side ") + std::string(to_string(side)));

  const double pa = grid.value(auction_price);
  const double q = static_cast<double>(auction_volume);
  std::vector<DensityPoint> out;
  out.reserve(ticks.size());
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    double gap = grid.tick_size();
    if (side == Side::kBuy && i + 1 < ticks.size()) gap = grid.value(ticks[i + 1]) - grid.value(ticks[i]);
    if (side == Side::kSell && i > 0) gap = grid.value(ticks[i]) - grid.value(ticks[i - 1]);
    const double p = grid.value(ticks[i]);
    const double v = static_cast<double>(depth.volume(side, ticks[i]));
    out.push_back({ticks[i], std::log(p / pa), gap, v / gap, v / gap / q});
  }
  return out;
}

std::vector<DensityPoint> total_density(const Depth& depth, Side side, Tick auction_price, Shares auction_volume,
                                        double max_x) {
  if (auction_volume <= 0) throw Error(ErrorCode::kDegenerateAuction, "auction volume must be positive");
  const auto& grid = depth.grid();
  const double pa = grid.value(auction_price);
  const double q = static_cast<double>(auction_volume);

  // Ticks beyond p_a ordered away from it.
  std::vector<const DepthLevel*> beyond;
  const auto& lv = depth.levels();
  if (side == Side::kBuy) {
    for (const auto& l : lv) {
      if (l.tick > auction_price) beyond.push_back(&l);
    }
  } else {
    for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
      if (it->tick < auction_price) beyond.push_back(&*it);
    }
  }

  std::vector<DensityPoint> out;
  for (std::size_t i = 0; i < beyond.size(); ++i) {
    const double p = grid.value(beyond[i]->tick);
    const double x = std::log(p / pa);
    if (std::abs(x) > max_x) break;
    const double gap = i + 1 < beyond.size() ? std::abs(grid.value(beyond[i + 1]->tick) - p) : grid.tick_size();
    const double v = static_cast<double>(beyond[i]->total());
    out.push_back({beyond[i]->tick, x, gap, v / gap, v / gap / q});
  }
  return out;
}

DensityProfile day_profile(const Depth& depth, const ClearingResult& clearing, double bin_width) {
  if (!(bin_width > 0)) throw Error(ErrorCode::kInvalidArgument, "bin width must be positive");
  if (clearing.volume() <= 0) throw Error(ErrorCode::kDegenerateAuction, "auction volume must be positive");
  const auto& grid = depth.grid();
  const double pa = grid.value(clearing.price());
  const double scale = 1.0 / (static_cast<double>(clearing.volume()) * bin_width);

  DensityProfile prof;
  prof.bin_width = bin_width;
  prof.day_count = 1;
  for (const auto& l : depth.levels()) {
    const double x = std::log(grid.value(l.tick) / pa);
    const auto k = static_cast<std::int64_t>(std::llround(x / bin_width));
    auto& bin = prof.bins[k];
    bin.rho_buy += static_cast<double>(l.buy) * scale;
    bin.rho_sell += static_cast<double>(l.sell) * scale;
    bin.n_days = 1;
  }
  return prof;
}

std::vector<DensityProfile> day_profiles(const AuctionBook& book, const ClearingResult& clearing, double bin_width,
                                         Grouping grouping) {
  std::vector<DensityProfile> out;
  switch (grouping) {
    case Grouping::kNone:
      out.push_back(day_profile(book.depth(), clearing, bin_width));
      break;
    case Grouping::kLatency:
      for (LatencyFlag f : kAllLatencyFlags) {
        auto p = day_profile(book.depth_if([f](const RestingOrder& o) { return o.latency == f; }), clearing, bin_width);
        p.group = std::string(to_string(f));
        out.push_back(std::move(p));
      }
      break;
    case Grouping::kAccount:
      for (AccountType a : kAllAccountTypes) {
        auto p = day_profile(book.depth_if([a](const RestingOrder& o) { return o.account == a; }), clearing, bin_width);
        p.group = std::string(to_string(a));
        out.push_back(std::move(p));
      }
      break;
  }
  return out;
}

DensityProfile average_density(std::span<const DensityProfile> profiles) {
  if (profiles.empty()) throw Error(ErrorCode::kEmptyBatch, "no density profiles to average");
  DensityProfile avg;
  avg.bin_width = profiles.front().bin_width;
  avg.group = profiles.front().group;
  for (const auto& p : profiles) {
    if (p.bin_width != avg.bin_width) throw Error(ErrorCode::kMismatchedBinning, "profiles use different bin widths");
    if (p.group != avg.group) throw Error(ErrorCode::kMismatchedBinning, "profiles belong to different groups");
    const double w = static_cast<double>(p.day_count);
    for (const auto& [k, bin] : p.bins) {
      auto& acc = avg.bins[k];
      acc.rho_buy += bin.rho_buy * w;
      acc.rho_sell += bin.rho_sell * w;
      acc.n_days += bin.n_days;
    }
    avg.day_count += p.day_count;
  }
  const double n = static_cast<double>(avg.day_count);
  for (auto& [k, bin] : avg.bins) {
    bin.rho_buy /= n;
    bin.rho_sell /= n;
  }
  return avg;
}

std::vector<DensityProfile> average_by_group(std::span<const DensityProfile> profiles) {
  std::vector<std::optional<std::string>> order;
  std::map<std::optional<std::string>, std::vector<DensityProfile>> by_group;
  for (const auto& p : profiles) {
    auto [it, inserted] = by_group.try_emplace(p.group);
    if (inserted) order.push_back(p.group);
    it->second.push_back(p);
  }
  std::vector<DensityProfile> out;
  for (const auto& g : order) out.push_back(average_density(by_group[g]));
  return out;
}

}  // namespace auction
