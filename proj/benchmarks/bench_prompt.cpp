#include <benchmark/benchmark.h>

#include "parl/agent/prompt.hpp"
#include "parl/envs/blackjack.hpp"

namespace {

using namespace parl;

HistoryBuffer history_with_episodes(int episodes) {
  HistoryBuffer buffer;
  buffer.mode = HistoryMode::FullHistory;
  for (int e = 1; e <= episodes; ++e) {
    buffer.begin_episode("[10, 6], [7]", DiscreteIndex{0, 16});
    for (int s = 0; s < 3; ++s) {
      StepRecord r;
      r.episode = e;
      r.step = s;
      r.action = ActionId{1};
      r.action_name = "Hit";
      r.new_state_text = "[10, 6, 5], [7]";
      r.reward = 0.0;
      r.terminal = s == 2;
      buffer.append_step(std::move(r), DiscreteIndex{0, 16}, 0.0);
    }
    buffer.end_episode();
  }
  buffer.begin_episode("[9, 7], [10]", DiscreteIndex{0, 16});
  return buffer;
}

void BM_BuildPrompt(benchmark::State& state) {
  const HistoryBuffer buffer = history_with_episodes(static_cast<int>(state.range(0)));
  const TaskDescription task = task_description(blackjack_spec());
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_prompt(task, buffer, "[9, 7], [10]"));
  }
}

}  // namespace

BENCHMARK(BM_BuildPrompt)->Arg(1)->Arg(10)->Arg(100);
