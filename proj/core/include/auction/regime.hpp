#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "auction/book.hpp"
#include "auction/clearing.hpp"
#include "auction/density.hpp"
#include "auction/impact.hpp"

namespace auction {

struct DensitySample {
  double x = 0;    // log-price distance from p_a, > 0, ascending
  double rho = 0;  // combined scaled density, > 0
};

inline constexpr std::size_t kDefaultMinPoints = 20;

struct Changepoint {
  double delta = 0;         // abscissa of the last sample in the constant window
  double l_tilde = 0;       // mean raw density over the window
  std::size_t n_points = 0; // samples in the window
  double cost = 0;
};

// Cost of splitting after the first `n_const` samples: squared residuals of
// log(rho) around their mean on the window plus those of a least-squares
// line through the remaining samples. n_const in [1, samples.size()].
double changepoint_cost(std::span<const DensitySample> samples, std::size_t n_const);

// Minimises changepoint_cost over every split whose tail is empty or has at
// least two samples; near-ties go to the widest window. Throws
// kNonPositiveDensity, kTooFewPoints when there are fewer than two samples or
// the chosen window holds fewer than min_points samples, and
// kInvalidArgument if the abscissae are not strictly increasing and positive.
Changepoint changepoint(std::span<const DensitySample> samples, std::size_t min_points = kDefaultMinPoints);

// Impact-side samples of total_density().
std::vector<DensitySample> regime_samples(const Depth& depth, Side side, Tick auction_price, Shares auction_volume,
                                          double max_x = kDefaultMaxX);

// omega0 plus total resting volume / Q_a on the ticks of `curve.side` with
// 0 < |log(p / p_a)| <= delta.
Ratio omega_max(const ImpactCurve& curve, const Depth& depth, double delta);

enum class ImpactScale {
  kLog,         // regress I on omega
  kLinearized,  // regress |p / p1 - 1| on omega, exact under constant density
};

// OLS slope (with intercept) through the breakpoints with
// omega0 < omega <= omega_max. Throws kTooFewPoints with fewer than two.
double empirical_slope(const ImpactCurve& curve, Ratio omega_max, ImpactScale scale = ImpactScale::kLinearized);

struct RegimeOptions {
  double max_x = kDefaultMaxX;
  std::size_t min_points = kDefaultMinPoints;
  ImpactScale scale = ImpactScale::kLinearized;
};

struct RegimeFit {
  Side side = Side::kBuy;
  double delta = 0;
  double l_tilde = 0;
  Ratio omega0;
  Ratio omega_max;
  std::optional<double> beta_emp;  // absent when the window has < 2 breakpoints
  double beta_theo = 0;
  std::size_t n_points = 0;
  Tick p1;
};

// Full pipeline for one side of a cleared book. Throws kTooFewPoints if the
// fit is rejected and kEmptySide if no tick lies beyond p_a.
RegimeFit fit_regime(const Depth& depth, const ClearingResult& clearing, Side side, const RegimeOptions& opts = {});

}  // namespace auction
