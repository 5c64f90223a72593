#include <benchmark/benchmark.h>

#include "parl/baselines/adam.hpp"
#include "parl/baselines/mlp.hpp"

namespace {

using namespace parl;

MlpParams bench_net(int input, int output) {
  SeededRng rng(7);
  const std::vector<int> hidden{64, 64};
  return make_mlp(input, hidden, output, Activation::ReLU, rng);
}

void BM_ForwardOneHot(benchmark::State& state) {
  const int input = static_cast<int>(state.range(0));
  const MlpParams net = bench_net(input, 6);
  const Features x = Features::one_hot({input / 2}, input);
  for (auto _ : state) benchmark::DoNotOptimize(mlp_forward(net, x));
}

void BM_ForwardBackwardOneHot(benchmark::State& state) {
  const int input = static_cast<int>(state.range(0));
  const MlpParams net = bench_net(input, 6);
  const Features x = Features::one_hot({input / 2}, input);
  const std::vector<double> grad{1, 0, 0, 0, 0, 0};
  ForwardCache cache;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlp_forward(net, x, &cache));
    benchmark::DoNotOptimize(mlp_backward(net, cache, grad));
  }
}

void BM_AdamStep(benchmark::State& state) {
  const int input = static_cast<int>(state.range(0));
  MlpParams net = bench_net(input, 6);
  const MlpParams grads = zeros_like(net);
  Adam adam(1e-3);
  for (auto _ : state) adam.step(net, grads);
}

}  // namespace

BENCHMARK(BM_ForwardOneHot)->Arg(16)->Arg(45)->Arg(500);
BENCHMARK(BM_ForwardBackwardOneHot)->Arg(16)->Arg(45)->Arg(500);
BENCHMARK(BM_AdamStep)->Arg(16)->Arg(500);
