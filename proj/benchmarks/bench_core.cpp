#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mhe/mphe.hpp"
#include "mhe/seminorm.hpp"
#include "mhe/signal.hpp"
#include "mhe/testfunc.hpp"

namespace {

std::vector<double> walk(std::size_t n) {
  std::mt19937 rng(42);
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> out(n);
  double x = 100.0;
  for (auto& v : out) {
    x += step(rng);
    v = x;
  }
  return out;
}

void BM_SemiNormCurve30x100(benchmark::State& state) {
  const auto values = walk(30);
  const auto window = mhe::Window::uniform(values, 0, 1.0 / 1000.0);
  const mhe::BetaGrid grid(100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhe::semi_norm_curve(window, grid));
  }
}
BENCHMARK(BM_SemiNormCurve30x100);

void BM_MpheProfile1650(benchmark::State& state) {
  const auto values = walk(1650);
  mhe::MpheConfig cfg;  // w = 30, 7x5 reference, n = 100
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhe::mphe_profile(values, 1.0 / 1650.0, cfg));
  }
}
BENCHMARK(BM_MpheProfile1650);

void BM_SignalLine1586x300(benchmark::State& state) {
  const auto g = walk(1586);
  mhe::SignalConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhe::signal_line(g, cfg, 30));
  }
}
BENCHMARK(BM_SignalLine1586x300);

void BM_Weierstrass1000(benchmark::State& state) {
  const mhe::WeierstrassConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhe::sample_weierstrass(1000, cfg));
  }
}
BENCHMARK(BM_Weierstrass1000);

}  // namespace

BENCHMARK_MAIN();
