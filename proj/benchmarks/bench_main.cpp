#include <benchmark/benchmark.h>

#include <random>

#include "auction/book.hpp"
#include "auction/clearing.hpp"
#include "auction/flowgen.hpp"
#include "auction/impact.hpp"
#include "auction/regime.hpp"

using namespace auction;

namespace {

const GeneratedFlow& flow() {
  static const GeneratedFlow f = [] {
    FlowConfig c;
    c.upper.kind = c.lower.kind = ShapeKind::kPiecewise;
    c.upper.volume_per_tick = c.lower.volume_per_tick = 400;
    c.cancel_rate = 0.5;
    c.modify_rate = 0.3;
    c.market_fraction = 0.02;
    return generate(c);
  }();
  return f;
}

const Depth& final_depth() {
  static const Depth d = replay(flow().grid, flow().events).depth();
  return d;
}

void BM_Replay(benchmark::State& state) {
  const auto& f = flow();
  for (auto _ : state) benchmark::DoNotOptimize(replay(f.grid, f.events));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.events.size()));
}
BENCHMARK(BM_Replay)->Unit(benchmark::kMillisecond);

void BM_Clear(benchmark::State& state) {
  const Depth& d = final_depth();
  for (auto _ : state) benchmark::DoNotOptimize(clear(d));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.levels().size()));
}
BENCHMARK(BM_Clear);

void BM_ImpactCurve(benchmark::State& state) {
  const Depth& d = final_depth();
  const ClearingResult r = clear(d);
  for (auto _ : state) benchmark::DoNotOptimize(impact_curve(d, r, Side::kBuy));
}
BENCHMARK(BM_ImpactCurve);

void BM_Changepoint(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0, 0.01);
  std::vector<DensitySample> s(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double x = 1e-4 * static_cast<double>(k + 1);
    const double lg = k < s.size() / 3 ? 0.0 : -0.05 * static_cast<double>(k - s.size() / 3);
    s[k] = {x, std::exp(lg + noise(rng))};
  }
  for (auto _ : state) benchmark::DoNotOptimize(changepoint(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Changepoint)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_FitRegime(benchmark::State& state) {
  const Depth& d = final_depth();
  const ClearingResult r = clear(d);
  for (auto _ : state) benchmark::DoNotOptimize(fit_regime(d, r, Side::kSell));
}
BENCHMARK(BM_FitRegime);

}  // namespace

BENCHMARK_MAIN();
