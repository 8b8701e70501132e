#include "auction/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "auction/error.hpp"

namespace auction {

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

std::string_view significance_stars(double p) noexcept {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kLengthMismatch, "samples differ in length");
  if (x.size() < 3) throw Error(ErrorCode::kTooFewPoints, "need at least three pairs");
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  const double n = static_cast<double>(x.size());
  const double m = (n + 1) / 2;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - m) * (ry[i] - m);
    sxx += (rx[i] - m) * (rx[i] - m);
    syy += (ry[i] - m) * (ry[i] - m);
  }
  if (sxx == 0 || syy == 0) throw Error(ErrorCode::kDegenerateSample, "constant sample");

  SpearmanResult r;
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double dof = n - 2;
  if (std::abs(r.rho) >= 1.0) {
    r.p_value = 0.0;
  } else {
    const double t = r.rho * std::sqrt(dof / (1 - r.rho * r.rho));
    const boost::math::students_t dist(dof);
    r.p_value = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  r.stars = significance_stars(r.p_value);
  return r;
}

double kolmogorov_survival(double lambda) noexcept {
  if (lambda <= 0) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form converges fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double s = 0;
    for (int k = 1; k <= 20; ++k) {
      const double j = 2.0 * k - 1.0;
      s += std::exp(-j * j * pi2 / (8 * lambda * lambda));
    }
    return std::clamp(1.0 - std::sqrt(2 * std::numbers::pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2 * s, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y, Alternative alternative) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::kEmptySample, "KS test needs two non-empty samples");
  std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());

  double d_plus = 0, d_minus = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      v = a[i];
    } else {
      v = b[j];
    }
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    const double diff = static_cast<double>(i) / n - static_cast<double>(j) / m;
    d_plus = std::max(d_plus, diff);
    d_minus = std::max(d_minus, -diff);
  }

  const double ne = n * m / (n + m);
  KsResult r;
  switch (alternative) {
    case Alternative::kTwoSided:
      r.statistic = std::max(d_plus, d_minus);
      r.p_value = kolmogorov_survival(std::sqrt(ne) * r.statistic);
      break;
    case Alternative::kGreater:
      r.statistic = d_plus;
      r.p_value = std::min(1.0, std::exp(-2 * ne * d_plus * d_plus));
      break;
    case Alternative::kLess:
      r.statistic = d_minus;
      r.p_value = std::min(1.0, std::exp(-2 * ne * d_minus * d_minus));
      break;
  }
  return r;
}

std::optional<double> DayMetrics::l_cash(Side s) const {
  const auto& l = l_tilde[side_index(s)];
  if (!l) return std::nullopt;
  return p_a * q_a * *l;
}

double zero_impact_probability(std::span<const DayMetrics> days, double threshold) {
  if (days.empty()) throw Error(ErrorCode::kEmptyBatch, "no days");
  if (!(threshold > 0)) throw Error(ErrorCode::kInvalidArgument, "threshold must be positive");
  std::size_t hits = 0;
  for (const auto& d : days) {
    for (double w : d.omega0) hits += w > threshold ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(2 * days.size());
}

double omega_max_exceedance(std::span<const DayMetrics> days, double threshold) {
  std::size_t hits = 0, total = 0;
  for (const auto& d : days) {
    for (const auto& w : d.omega_max) {
      if (!w) continue;
      ++total;
      hits += *w > threshold ? 1 : 0;
    }
  }
  if (total == 0) throw Error(ErrorCode::kEmptyBatch, "no fitted day sides");
  return static_cast<double>(hits) / static_cast<double>(total);
}

double rcdf(std::span<const double> values, double v) {
  if (values.empty()) throw Error(ErrorCode::kEmptySample, "empty sample");
  const auto n = std::count_if(values.begin(), values.end(), [v](double x) { return x >= v; });
  return static_cast<double>(n) / static_cast<double>(values.size());
}

std::vector<RcdfRow> rcdf_table(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorCode::kTooFewPoints, "need at least two values");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  std::vector<RcdfRow> out;
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && s[i] == s[i - 1]) continue;
    out.push_back({s[i], static_cast<double>(s.size() - i) / n});
  }
  return out;
}

namespace {

double quantile_sorted(const std::vector<double>& s, double q) {
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorCode::kTooFewPoints, "need at least two values");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
  double var = 0;
  for (double v : s) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / (n - 1));
  const double iqr = quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);
  double spread = iqr > 0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0)) spread = std::abs(mean);
  if (!(spread > 0)) throw Error(ErrorCode::kDegenerateSample, "all values are zero");
  return 0.9 * spread * std::pow(n, -0.2);
}

KdeGrid kernel_density(std::span<const double> values, std::optional<double> bandwidth, std::size_t points) {
  if (values.size() < 2) throw Error(ErrorCode::kTooFewPoints, "need at least two values");
  if (points < 2) throw Error(ErrorCode::kInvalidArgument, "grid needs at least two points");
  KdeGrid g;
  g.bandwidth = bandwidth ? *bandwidth : silverman_bandwidth(values);
  if (!(g.bandwidth > 0)) throw Error(ErrorCode::kInvalidArgument, "bandwidth must be positive");
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo = *mn - 4 * g.bandwidth;
  const double hi = *mx + 4 * g.bandwidth;
  const double step = (hi - lo) / static_cast<double>(points - 1);
  const double norm = 1.0 / (static_cast<double>(values.size()) * g.bandwidth * std::sqrt(2 * std::numbers::pi));
  g.x.resize(points);
  g.density.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + step * static_cast<double>(i);
    double s = 0;
    for (double v : values) {
      const double z = (x - v) / g.bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    g.x[i] = x;
    g.density[i] = s * norm;
  }
  return g;
}

}  // namespace auction
