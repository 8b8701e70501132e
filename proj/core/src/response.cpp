#include "auction/response.hpp"

#include <cmath>

#include "auction/error.hpp"
#include "auction/impact.hpp"

namespace auction {

std::optional<Marketability> classify_marketable(const OrderEvent& ev, const AuctionBook& before, Tick p_ind) {
  auto aggressive = [&](Side side, const std::optional<Tick>& price) {
    if (!price) return true;
    return side == Side::kBuy ? *price >= p_ind : *price <= p_ind;
  };

  if (ev.action == Action::kSubmit) {
    if (ev.type == OrderType::kStop) return std::nullopt;
    std::optional<Tick> price;
    if (ev.type != OrderType::kMarket && ev.price_units) price = before.grid().to_tick(*ev.price_units);
    if (!aggressive(ev.side, price)) return std::nullopt;
    return Marketability{ev.side, Action::kSubmit, sign(ev.side), ev.quantity};
  }
  if (ev.action == Action::kCancel) {
    const RestingOrder* o = before.find(ev.order_id);
    if (o == nullptr || o->inert()) return std::nullopt;
    if (!aggressive(o->side, o->price)) return std::nullopt;
    return Marketability{o->side, Action::kCancel, -sign(o->side), o->quantity};
  }
  return std::nullopt;
}

std::optional<std::size_t> LogBins::index(double omega) const {
  if (!(omega >= lo) || omega > hi) return std::nullopt;
  const double pos = std::log(omega / lo) / std::log(hi / lo) * static_cast<double>(count);
  const auto i = static_cast<std::size_t>(pos);
  return i < count ? i : count - 1;
}

double LogBins::edge(std::size_t i) const {
  return lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count));
}

namespace {

struct Moments {
  std::size_t n = 0;
  double sum = 0;
  double sum_sq = 0;
  void add(double v) {
    ++n;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return sum / static_cast<double>(n); }
  std::optional<double> se() const {
    if (n < 2) return std::nullopt;
    const double nn = static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - sum * sum / nn) / (nn - 1));
    return std::sqrt(var / nn);
  }
};

std::optional<ClearingResult> try_clear(const AuctionBook& book, std::optional<Tick> ref) {
  try {
    return clear(book, ref);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoCross) throw;
    return std::nullopt;
  }
}

}  // namespace

std::vector<ResponseBin> bin_response(std::span<const MarketableEvent> events, const LogBins& bins,
                                      std::size_t* out_of_range) {
  const std::size_t nb = bins.count;
  std::vector<Moments> r1(nb), rm(nb), diff(nb), rv(nb);
  std::size_t outside = 0;
  for (const auto& e : events) {
    const auto k = bins.index(e.omega);
    if (!k) {
      ++outside;
      continue;
    }
    r1[*k].add(e.move_next);
    rm[*k].add(e.move_mech);
    diff[*k].add(e.move_next - e.move_mech);
    if (e.move_virtual) rv[*k].add(*e.move_virtual);
  }
  if (out_of_range != nullptr) *out_of_range = outside;

  std::vector<ResponseBin> out(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    auto& b = out[k];
    b.lo = bins.edge(k);
    b.hi = bins.edge(k + 1);
    b.count = r1[k].n;
    if (b.count == 0) continue;
    b.r1 = r1[k].mean();
    b.rm = rm[k].mean();
    b.r1_se = r1[k].se();
    b.rm_se = rm[k].se();
    b.diff_se = diff[k].se();
    if (rv[k].n > 0) {
      b.rv = rv[k].mean();
      b.rv_se = rv[k].se();
    }
  }
  return out;
}

ResponseResult response_curves(const PriceGrid& grid, std::span<const OrderEvent> events,
                               const ResponseOptions& opts) {
  if (opts.bins.count == 0 || !(opts.bins.lo > 0) || !(opts.bins.hi > opts.bins.lo)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid response bins");
  }
  ResponseResult res;
  if (events.empty()) return res;
  const std::int64_t cutoff = events.front().timestamp_us + opts.warmup_us;

  AuctionBook book(grid);
  std::optional<ClearingResult> current;
  for (const auto& ev : events) {
    const bool recording = ev.timestamp_us >= cutoff &&
                           (ev.action == Action::kSubmit || (opts.with_cancels && ev.action == Action::kCancel));
    std::optional<Marketability> m;
    std::optional<Depth> depth_before;
    if (recording) {
      if (!current) {
        ++res.skipped_no_cross;
      } else {
        m = classify_marketable(ev, book, current->price());
        if (m && opts.virtual_impact) depth_before = book.depth();
      }
    }
    const std::optional<ClearingResult> before = current;
    book.apply(ev);
    current = try_clear(book, opts.reference);
    if (!m) continue;
    if (!current) {
      ++res.skipped_no_cross;
      continue;
    }

    MarketableEvent me;
    me.t_us = ev.timestamp_us;
    me.epsilon = m->epsilon;
    me.side = m->side;
    me.kind = m->kind;
    me.quantity = m->quantity;
    me.q_before = before->volume();
    me.omega = static_cast<double>(m->quantity) / static_cast<double>(me.q_before);
    me.p_before = before->price();
    me.p_after = current->price();
    if (depth_before) {
      try {
        me.p_virtual = m->kind == Action::kSubmit
                           ? inject_and_reclear(*depth_before, m->side, m->quantity, opts.reference)
                           : inject_and_reclear(*depth_before, opposite(m->side), m->quantity, opts.reference);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoCross) throw;
      }
    }
    res.events.push_back(me);
  }

  for (std::size_t i = 0; i < res.events.size(); ++i) {
    if (i + 1 < res.events.size()) {
      res.events[i].p_next = res.events[i + 1].p_before;
    } else {
      res.events[i].p_next = current ? current->price() : res.events[i].p_after;
    }
  }

  for (auto& e : res.events) {
    const double pb = grid.value(e.p_before);
    e.move_next = e.epsilon * (grid.value(e.p_next) - pb);
    e.move_mech = e.epsilon * (grid.value(e.p_after) - pb);
    if (e.p_virtual) e.move_virtual = e.epsilon * (grid.value(*e.p_virtual) - pb);
  }
  res.bins = bin_response(res.events, opts.bins, &res.skipped_out_of_range);
  return res;
}

}  // namespace auction
