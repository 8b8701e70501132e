#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "auction/error.hpp"
#include "auction/stats.hpp"
#include "oracles/oracles.hpp"

using namespace auction;

namespace {

using V = std::vector<double>;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

DayMetrics day(double w_b, double w_s, std::optional<double> wmax_b = {}, std::optional<double> wmax_s = {}) {
  DayMetrics d;
  d.omega0 = {w_b, w_s};
  d.omega_max = {wmax_b, wmax_s};
  return d;
}

}  // namespace

TEST(MidRanks, TiesShareTheirMean) {
  EXPECT_EQ(mid_ranks(V{10, 20, 20, 5}), (V{2, 3.5, 3.5, 1}));
}

TEST(Spearman, HandExamples) {
  EXPECT_DOUBLE_EQ(spearman(V{1, 2, 3, 4}, V{1, 2, 3, 4}).rho, 1.0);
  EXPECT_DOUBLE_EQ(spearman(V{1, 2, 3, 4}, V{4, 3, 2, 1}).rho, -1.0);
  const auto r = spearman(V{1, 2, 3, 4}, V{2, 1, 4, 3});
  EXPECT_NEAR(r.rho, 0.6, 1e-15);
  // t approximation: t = 0.6 sqrt(2 / 0.64), two-sided with 2 dof.
  EXPECT_NEAR(r.p_value, 0.4, 1e-12);
  EXPECT_EQ(r.stars, "");
}

TEST(Spearman, PValuesAgainstReference) {
  // Reference values from an independent implementation of the same t test.
  const auto a = spearman(V{1, 2, 3, 4, 5, 6, 7}, V{2, 1, 4, 3, 7, 5, 6});
  EXPECT_NEAR(a.rho, 0.8214285714285715, 1e-12);
  EXPECT_NEAR(a.p_value, 0.023448808345691505, 1e-10);
  EXPECT_EQ(a.stars, "*");
  const auto b = spearman(V{1, 2, 2, 3, 4}, V{1, 3, 2, 2, 5});
  EXPECT_NEAR(b.rho, 0.7631578947368421, 1e-12);
  EXPECT_NEAR(b.p_value, 0.1333391195318063, 1e-10);
}

TEST(Spearman, Errors) {
  EXPECT_EQ(code_of([] { spearman(V{1, 2, 3}, V{1, 2}); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { spearman(V{1, 2}, V{1, 2}); }), ErrorCode::kTooFewPoints);
  EXPECT_EQ(code_of([] { spearman(V{1, 1, 1}, V{1, 2, 3}); }), ErrorCode::kDegenerateSample);
}

TEST(SpearmanProperty, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1);
  for (int t = 0; t < 100; ++t) {
    V x(25), y(25), fx, fy;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = n(rng);
      y[i] = x[i] + n(rng);
      fx.push_back(std::exp(x[i]));
      fy.push_back(y[i] * y[i] * y[i] + 3);
    }
    EXPECT_NEAR(spearman(x, y).rho, spearman(fx, fy).rho, 1e-12);
  }
}

TEST(Stars, Thresholds) {
  EXPECT_EQ(significance_stars(0.0009), "***");
  EXPECT_EQ(significance_stars(0.009), "**");
  EXPECT_EQ(significance_stars(0.049), "*");
  EXPECT_EQ(significance_stars(0.05), "");
}

TEST(Ks, HandExamples) {
  EXPECT_EQ(ks_two_sample(V{1, 2, 3}, V{1, 2, 3}).statistic, 0.0);
  EXPECT_EQ(ks_two_sample(V{1, 2, 3}, V{1, 2, 3}).p_value, 1.0);
  EXPECT_EQ(ks_two_sample(V{1, 2}, V{5, 6, 7}).statistic, 1.0);
  const auto r = ks_two_sample(V{1, 2, 3}, V{1.5, 2.5, 3.5});
  EXPECT_NEAR(r.statistic, 1.0 / 3, 1e-15);
  EXPECT_NEAR(r.p_value, 0.9962551923793987, 1e-9);
  EXPECT_EQ(code_of([] { ks_two_sample(V{}, V{1}); }), ErrorCode::kEmptySample);
}

TEST(Ks, OneSided) {
  // x sits left of y, so F_x >= F_y everywhere.
  const V x{1, 2, 3}, y{1.5, 2.5, 3.5};
  const auto g = ks_two_sample(x, y, Alternative::kGreater);
  const auto l = ks_two_sample(x, y, Alternative::kLess);
  EXPECT_NEAR(g.statistic, 1.0 / 3, 1e-15);
  EXPECT_EQ(l.statistic, 0.0);
  EXPECT_NEAR(g.p_value, std::exp(-2 * 1.5 / 9), 1e-15);
  EXPECT_EQ(l.p_value, 1.0);
}

TEST(Ks, KolmogorovSurvivalAgainstReference) {
  const std::pair<double, double> ref[] = {{0.3, 0.9999906941986655}, {0.5, 0.9639452436648751},
                                           {1.0, 0.26999967167735456}, {1.17, 0.12939004218561884},
                                           {1.19, 0.11774229287977166}, {1.5, 0.022217962616525127},
                                           {2.5, 7.453306344157342e-06}};
  for (auto [lambda, p] : ref) EXPECT_NEAR(kolmogorov_survival(lambda), p, 1e-10 * (1 + p)) << lambda;
  const auto r = ks_two_sample(V{0.1, 0.4, 0.7, 0.9, 1.3, 2.2, 2.5}, V{0.3, 0.8, 1.1, 1.9, 2.8, 3.1, 3.3, 4.0});
  EXPECT_DOUBLE_EQ(r.statistic, 0.5);
  EXPECT_NEAR(r.p_value, 0.3081329677736096, 1e-10);
}

TEST(KsProperty, SymmetricInvariantAndMatchesOracle) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> len(1, 40), val(0, 30);
  for (int t = 0; t < 300; ++t) {
    V x(len(rng)), y(len(rng));
    for (auto& v : x) v = val(rng);
    for (auto& v : y) v = val(rng) + 3;
    const auto a = ks_two_sample(x, y), b = ks_two_sample(y, x);
    ASSERT_DOUBLE_EQ(a.statistic, b.statistic);
    ASSERT_DOUBLE_EQ(a.statistic, oracle::ks_statistic(x, y));
    V ex, ey;
    for (double v : x) ex.push_back(std::exp(v / 10));
    for (double v : y) ey.push_back(std::exp(v / 10));
    ASSERT_DOUBLE_EQ(ks_two_sample(ex, ey).statistic, a.statistic);
  }
}

TEST(ZeroImpact, Probability) {
  const std::vector<DayMetrics> all{day(0.02, 0.02), day(0.02, 0.02)};
  EXPECT_EQ(zero_impact_probability(all, 0.01), 1.0);
  const std::vector<DayMetrics> none{day(0.001, 0.005)};
  EXPECT_EQ(zero_impact_probability(none, 0.01), 0.0);
  // At omega0 == threshold the price already moves.
  EXPECT_EQ(zero_impact_probability(std::vector<DayMetrics>{day(0.01, 0.02)}, 0.01), 0.5);
  EXPECT_EQ(code_of([] { zero_impact_probability({}, 0.01); }), ErrorCode::kEmptyBatch);
  EXPECT_EQ(code_of([&] { zero_impact_probability(all, 0); }), ErrorCode::kInvalidArgument);
}

TEST(ZeroImpactProperty, RecountAndMonotone) {
  std::mt19937_64 rng(4);
  std::exponential_distribution<double> e(30);
  std::vector<DayMetrics> days;
  for (int i = 0; i < 200; ++i) days.push_back(day(e(rng), e(rng)));
  double prev = 1.0;
  for (double th = 0.001; th < 0.2; th *= 1.3) {
    std::size_t hits = 0;
    for (const auto& d : days) hits += (d.omega0[0] > th) + (d.omega0[1] > th);
    const double p = zero_impact_probability(days, th);
    EXPECT_DOUBLE_EQ(p, hits / 400.0);
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(OmegaMaxExceedance, CountsFittedSidesOnly) {
  const std::vector<DayMetrics> days{day(0, 0, 0.7, 0.2), day(0, 0, 0.9, std::nullopt), day(0, 0)};
  EXPECT_DOUBLE_EQ(omega_max_exceedance(days, 0.5), 2.0 / 3);
  EXPECT_EQ(code_of([] { omega_max_exceedance(std::vector<DayMetrics>{day(0, 0)}, 0.5); }), ErrorCode::kEmptyBatch);
}

TEST(Rcdf, StepValues) {
  EXPECT_DOUBLE_EQ(rcdf(V{1, 2, 3}, 2), 2.0 / 3);
  EXPECT_EQ(rcdf(V{1, 2, 3}, -5), 1.0);
  EXPECT_EQ(rcdf(V{1, 2, 3}, 3.5), 0.0);
  const auto t = rcdf_table(V{3, 1, 2, 2});
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].value, 1);
  EXPECT_EQ(t[0].fraction, 1.0);
  EXPECT_EQ(t[1].fraction, 0.75);
  EXPECT_EQ(t[2].fraction, 0.25);
  EXPECT_EQ(code_of([] { rcdf_table(V{1}); }), ErrorCode::kTooFewPoints);
}

TEST(Kde, IntegratesToOne) {
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> d(0, 1);
  for (std::size_t n : {2u, 10u, 200u}) {
    V v(n);
    for (auto& x : v) x = d(rng);
    const auto k = kernel_density(v);
    double integral = 0;
    for (std::size_t i = 1; i < k.x.size(); ++i) {
      integral += 0.5 * (k.density[i] + k.density[i - 1]) * (k.x[i] - k.x[i - 1]);
    }
    EXPECT_NEAR(integral, 1.0, 1e-3) << n;
    EXPECT_EQ(k.x.size(), 512u);
  }
}

TEST(Kde, SilvermanBandwidth) {
  const V v{1, 2, 3, 4, 5};
  // sd = 1.5811, IQR = 2 -> 2 / 1.34 = 1.4925.
  EXPECT_NEAR(silverman_bandwidth(v), 0.9 * (2 / 1.34) * std::pow(5.0, -0.2), 1e-12);
  EXPECT_EQ(code_of([] { silverman_bandwidth(V{0, 0, 0}); }), ErrorCode::kDegenerateSample);
  EXPECT_GT(silverman_bandwidth(V{2, 2, 2}), 0);
}

TEST(DayMetrics, CashLiquidity) {
  DayMetrics d;
  d.p_a = 48;
  d.q_a = 1000;
  d.l_tilde = {2.5, std::nullopt};
  EXPECT_DOUBLE_EQ(*d.l_cash(Side::kBuy), 48 * 1000 * 2.5);
  EXPECT_FALSE(d.l_cash(Side::kSell));
}
