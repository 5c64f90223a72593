#include <benchmark/benchmark.h>

#include "parl/envs/env.hpp"

namespace {

using namespace parl;

void BM_EnvEpisodes(benchmark::State& state, EnvId id) {
  auto env = make_env(id);
  SeededRng env_rng(1);
  SeededRng action_rng(2);
  const auto n_actions = static_cast<std::uint32_t>(env->spec().action_count);
  std::int64_t steps = 0;
  for (auto _ : state) {
    env->reset(env_rng);
    while (!env->done()) {
      benchmark::DoNotOptimize(
          env->step(ActionId{static_cast<int>(action_rng.uniform_int(n_actions))},
                    env_rng));
      ++steps;
    }
  }
  state.counters["steps/s"] =
      benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}

}  // namespace

BENCHMARK_CAPTURE(BM_EnvEpisodes, blackjack, parl::EnvId::Blackjack);
BENCHMARK_CAPTURE(BM_EnvEpisodes, frozenlake, parl::EnvId::FrozenLake);
BENCHMARK_CAPTURE(BM_EnvEpisodes, taxi, parl::EnvId::Taxi);
