#include "auction/regime.hpp"

#include <cmath>
#include <string>

#include "auction/error.hpp"

namespace auction {

namespace {

void check_samples(std::span<const DensitySample> samples) {
  double prev = 0;
  for (const auto& s : samples) {
    if (!(s.rho > 0) || !std::isfinite(s.rho)) {
      throw Error(ErrorCode::kNonPositiveDensity, "density samples must be positive");
    }
    if (!(s.x > prev)) throw Error(ErrorCode::kInvalidArgument, "sample abscissae must be positive and increasing");
    prev = s.x;
  }
}

// Running sums over (x - x_mean, log rho - l_mean); centring keeps the
// one-pass residual formulas accurate.
struct Sums {
  double n = 0, x = 0, y = 0, xx = 0, xy = 0, yy = 0;
  void add(double a, double b) {
    n += 1;
    x += a;
    y += b;
    xx += a * a;
    xy += a * b;
    yy += b * b;
  }
  Sums operator-(const Sums& o) const { return {n - o.n, x - o.x, y - o.y, xx - o.xx, xy - o.xy, yy - o.yy}; }
  double const_sse() const { return n > 0 ? std::max(0.0, yy - y * y / n) : 0.0; }
  double line_sse() const {
    if (n < 2) return 0.0;
    const double sxx = xx - x * x / n;
    const double sxy = xy - x * y / n;
    const double syy = yy - y * y / n;
    if (sxx <= 0) return std::max(0.0, syy);
    return std::max(0.0, syy - sxy * sxy / sxx);
  }
};

std::vector<Sums> prefix_sums(std::span<const DensitySample> samples, double& total_yy) {
  double mx = 0, my = 0;
  for (const auto& s : samples) {
    mx += s.x;
    my += std::log(s.rho);
  }
  mx /= static_cast<double>(samples.size());
  my /= static_cast<double>(samples.size());
  std::vector<Sums> pre(samples.size() + 1);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    pre[i + 1] = pre[i];
    pre[i + 1].add(samples[i].x - mx, std::log(samples[i].rho) - my);
  }
  total_yy = pre.back().yy;
  return pre;
}

}  // namespace

double changepoint_cost(std::span<const DensitySample> samples, std::size_t n_const) {
  check_samples(samples);
  if (n_const < 1 || n_const > samples.size()) throw Error(ErrorCode::kInvalidArgument, "split out of range");
  double total_yy = 0;
  const auto pre = prefix_sums(samples, total_yy);
  return pre[n_const].const_sse() + (pre.back() - pre[n_const]).line_sse();
}

Changepoint changepoint(std::span<const DensitySample> samples, std::size_t min_points) {
  if (samples.size() < 2) throw Error(ErrorCode::kTooFewPoints, "need at least two density samples");
  check_samples(samples);

  double total_yy = 0;
  const auto pre = prefix_sums(samples, total_yy);
  const std::size_t n = samples.size();
  const double tol = 1e-12 * (1.0 + total_yy);

  std::size_t best_j = 0;
  double best_cost = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    if (n - j == 1) continue;
    const double cost = pre[j].const_sse() + (pre[n] - pre[j]).line_sse();
    if (best_j == 0 || cost <= best_cost + tol) {
      // Later (wider) windows win near-ties; only a real improvement lowers the bar.
      if (best_j == 0 || cost < best_cost) best_cost = cost;
      best_j = j;
    }
  }

  Changepoint cp;
  cp.n_points = best_j;
  cp.delta = samples[best_j - 1].x;
  cp.cost = best_cost;
  double sum = 0;
  for (std::size_t i = 0; i < best_j; ++i) sum += samples[i].rho;
  cp.l_tilde = sum / static_cast<double>(best_j);
  if (cp.n_points < min_points) {
    throw Error(ErrorCode::kTooFewPoints, "constant window holds " + std::to_string(cp.n_points) +
                                              " samples, fewer than " + std::to_string(min_points));
  }
  return cp;
}

std::vector<DensitySample> regime_samples(const Depth& depth, Side side, Tick auction_price, Shares auction_volume,
                                          double max_x) {
  std::vector<DensitySample> out;
  for (const auto& p : total_density(depth, side, auction_price, auction_volume, max_x)) {
    out.push_back({std::abs(p.log_price), p.scaled});
  }
  return out;
}

Ratio omega_max(const ImpactCurve& curve, const Depth& depth, double delta) {
  const auto& grid = depth.grid();
  const double pa = grid.value(curve.auction_price);
  const double cut = delta * (1.0 + 1e-12);
  Shares num = curve.omega0.num;
  for (const auto& l : depth.levels()) {
    const bool beyond = curve.side == Side::kBuy ? l.tick > curve.auction_price : l.tick < curve.auction_price;
    if (beyond && std::abs(std::log(grid.value(l.tick) / pa)) <= cut) num += l.total();
  }
  return {num, curve.omega0.den};
}

double empirical_slope(const ImpactCurve& curve, Ratio omega_max, ImpactScale scale) {
  if (curve.breakpoints.empty()) throw Error(ErrorCode::kTooFewPoints, "curve has no breakpoints");
  const double p1 = curve.grid.value(curve.breakpoints.front().price);
  std::vector<double> xs, ys;
  for (const auto& b : curve.breakpoints) {
    if (!(curve.omega0 < b.omega) || omega_max < b.omega) continue;
    xs.push_back(b.omega.value());
    ys.push_back(scale == ImpactScale::kLog ? b.impact : std::abs(curve.grid.value(b.price) / p1 - 1.0));
  }
  if (xs.size() < 2) throw Error(ErrorCode::kTooFewPoints, "need two breakpoints inside the window");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

RegimeFit fit_regime(const Depth& depth, const ClearingResult& clearing, Side side, const RegimeOptions& opts) {
  const auto samples = regime_samples(depth, side, clearing.price(), clearing.volume(), opts.max_x);
  if (samples.empty()) throw Error(ErrorCode::kEmptySide, "no resting volume beyond the auction price");
  const auto cp = changepoint(samples, opts.min_points);
  const auto curve = impact_curve(depth, clearing, side, opts.max_x);

  RegimeFit fit;
  fit.side = side;
  fit.delta = cp.delta;
  fit.l_tilde = cp.l_tilde;
  fit.n_points = cp.n_points;
  fit.omega0 = curve.omega0;
  fit.omega_max = omega_max(curve, depth, cp.delta);
  fit.p1 = curve.breakpoints.front().price;
  fit.beta_theo = theoretical_slope(depth.grid().value(fit.p1), cp.l_tilde);
  try {
    fit.beta_emp = empirical_slope(curve, fit.omega_max, opts.scale);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTooFewPoints) throw;
  }
  return fit;
}

}  // namespace auction
