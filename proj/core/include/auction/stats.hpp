#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "auction/order_event.hpp"

namespace auction {

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> mid_ranks(std::span<const double> values);

// "***" below 0.001, "**" below 0.01, "*" below 0.05, "" otherwise.
std::string_view significance_stars(double p_value) noexcept;

struct SpearmanResult {
  double rho = 0;
  double p_value = 1;  // two-sided, t approximation with n - 2 dof
  std::string_view stars;
};

// Throws kLengthMismatch, kTooFewPoints (n < 3) or kDegenerateSample.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

enum class Alternative {
  kTwoSided,
  kGreater,  // statistic sup(F_x - F_y)
  kLess,     // statistic sup(F_y - F_x)
};

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

// Asymptotic p-value with effective size n m / (n + m). Throws kEmptySample.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y,
                       Alternative alternative = Alternative::kTwoSided);

// P[K > lambda] for the Kolmogorov distribution.
double kolmogorov_survival(double lambda) noexcept;

// Per-day, per-auction summary feeding the batch statistics. Index 0 is the
// buy side, 1 the sell side; fit fields are absent when the fit failed.
struct DayMetrics {
  std::string date;
  double p_a = 0;
  double q_a = 0;
  std::array<double, 2> omega0{};
  std::array<std::vector<double>, 2> domega;
  std::array<std::optional<double>, 2> delta;
  std::array<std::optional<double>, 2> l_tilde;
  std::array<std::optional<double>, 2> omega_max;
  std::array<std::optional<double>, 2> beta_emp;
  std::array<std::optional<double>, 2> beta_theo;

  // p_a * Q_a * L for one side.
  std::optional<double> l_cash(Side s) const;
};

inline constexpr std::size_t side_index(Side s) noexcept { return s == Side::kBuy ? 0 : 1; }

// Fraction of (day, side) pairs whose omega0 exceeds the threshold, i.e. on
// which an order of size threshold * Q_a leaves the price unchanged. Throws
// kEmptyBatch and kInvalidArgument for threshold <= 0.
double zero_impact_probability(std::span<const DayMetrics> days, double threshold);

// Fraction of (day, side) pairs with omega_max above the threshold, over the
// pairs with a fit. Throws kEmptyBatch when no pair has one.
double omega_max_exceedance(std::span<const DayMetrics> days, double threshold);

// Fraction of values >= v.
double rcdf(std::span<const double> values, double v);

struct RcdfRow {
  double value = 0;
  double fraction = 0;
};
// One row per distinct value, ascending. Throws kTooFewPoints below 2 values.
std::vector<RcdfRow> rcdf_table(std::span<const double> values);

struct KdeGrid {
  double bandwidth = 0;
  std::vector<double> x;
  std::vector<double> density;
};

// 0.9 min(sd, IQR / 1.34) n^(-1/5); falls back to sd or |mean| when the
// spread collapses, and throws kDegenerateSample if everything is zero.
double silverman_bandwidth(std::span<const double> values);

// Gaussian kernel density on `points` evenly spaced abscissae spanning
// [min - 4h, max + 4h]. Throws kTooFewPoints below 2 values.
KdeGrid kernel_density(std::span<const double> values, std::optional<double> bandwidth = std::nullopt,
                       std::size_t points = 512);

}  // namespace auction
