#include "parl/agent/loop.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "parl/envs/blackjack.hpp"
#include "parl/envs/frozen_lake.hpp"
#include "parl/errors.hpp"
#include "test_util.hpp"

using namespace parl;

namespace {

// Policy-table mock driving the BFS-optimal path on the non-slippery lake,
// keyed by the decoded sentence of each cell.
PolicyTableBackend optimal_lake_backend() {
  const auto bfs = oracles::bfs_shortest_path(FrozenLakeMap::standard());
  EXPECT_TRUE(bfs.has_value());
  const FrozenLakeEnv env(false);
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [state, action] : bfs->action_by_state) {
    entries.emplace_back(
        "row " + std::to_string(state / 4) + ", column " + std::to_string(state % 4),
        env.spec().action_names[static_cast<std::size_t>(action)]);
  }
  return PolicyTableBackend(std::move(entries));
}

ParlConfig lake_config(HistoryMode mode, int episodes) {
  ParlConfig config;
  config.episodes = episodes;
  config.decode_mode = DecodeMode::Script;
  config.history_mode = mode;
  config.seed = 21;
  return config;
}

}  // namespace

TEST(RunTraining, OptimalMockSolvesNonSlipperyLake) {
  FrozenLakeEnv env(/*slippery=*/false);
  PolicyTableBackend backend = optimal_lake_backend();
  const TrainResult result = run_training(env, backend, lake_config(HistoryMode::FullHistory, 5));

  ASSERT_EQ(result.metrics.rows.size(), 5u);
  for (const auto& row : result.metrics.rows) {
    EXPECT_DOUBLE_EQ(row.true_reward, 1.0);
    EXPECT_EQ(row.length, 6);
    EXPECT_EQ(row.fallback_count, 0);
  }
  EXPECT_EQ(result.history.completed_episodes.size(), 5u);
  EXPECT_EQ(result.fallback_total, 0);
  // one LLM call per step
  EXPECT_EQ(result.transcript.size(), 30u);
}

TEST(RunTraining, PromptTokensGrowUnderFullHistory) {
  FrozenLakeEnv env(false);
  PolicyTableBackend backend = optimal_lake_backend();
  const TrainResult result =
      run_training(env, backend, lake_config(HistoryMode::FullHistory, 6));
  for (std::size_t i = 1; i < result.metrics.rows.size(); ++i) {
    EXPECT_GT(result.metrics.rows[i].prompt_tokens_estimate,
              result.metrics.rows[i - 1].prompt_tokens_estimate);
  }
}

TEST(RunTraining, EpisodeOnePromptIdenticalAcrossModes) {
  // Before any history exists the three modes coincide.
  const auto first_prompt = [](HistoryMode mode) {
    FrozenLakeEnv env(false);
    Transcript transcript;
    PolicyTableBackend inner = optimal_lake_backend();
    RecordingBackend recording(inner, transcript);
    run_training(env, recording, lake_config(mode, 1));
    return transcript.entries().front().request;
  };
  const CompletionRequest full = first_prompt(HistoryMode::FullHistory);
  const CompletionRequest none = first_prompt(HistoryMode::NoHistory);
  EXPECT_EQ(full, none);
}

TEST(RunTraining, RandomRewardsSubstitutesPromptRewardsButNotMetrics) {
  FrozenLakeEnv env(false);
  PolicyTableBackend backend = optimal_lake_backend();
  const TrainResult result =
      run_training(env, backend, lake_config(HistoryMode::RandomRewards, 10));

  // Metrics carry true rewards: the optimal path always scores 1.
  for (const auto& row : result.metrics.rows) EXPECT_DOUBLE_EQ(row.true_reward, 1.0);

  // Records carry the substituted rewards; side storage keeps the truth.
  int disagreements = 0;
  for (const auto& episode : result.history.completed_episodes) {
    ASSERT_EQ(episode.records.size(), episode.true_rewards.size());
    for (std::size_t s = 0; s < episode.records.size(); ++s) {
      ASSERT_TRUE(episode.records[s].reward.has_value());
      EXPECT_TRUE(env.spec().reward_set.contains(*episode.records[s].reward));
      if (*episode.records[s].reward != episode.true_rewards[s]) ++disagreements;
    }
    EXPECT_DOUBLE_EQ(episode.true_total_reward(), 1.0);
  }
  EXPECT_GT(disagreements, 0);  // substitution actually happened
}

TEST(RunTraining, MetricsEqualAcrossRewardModesWithSameSeeds) {
  // RandomRewards never changes which true rewards are recorded.
  const auto metrics_for = [](HistoryMode mode) {
    FrozenLakeEnv env(false);
    PolicyTableBackend backend = optimal_lake_backend();
    return to_csv(run_training(env, backend, lake_config(mode, 8)).metrics);
  };
  EXPECT_EQ(metrics_for(HistoryMode::FullHistory),
            metrics_for(HistoryMode::RandomRewards));
}

TEST(RunTraining, OmitZeroRewardsDropsRewardClause) {
  FrozenLakeEnv env(false);
  PolicyTableBackend backend = optimal_lake_backend();
  ParlConfig config = lake_config(HistoryMode::FullHistory, 2);
  config.omit_zero_rewards = true;
  const TrainResult result = run_training(env, backend, config);
  const auto& episode = result.history.completed_episodes.front();
  for (std::size_t s = 0; s + 1 < episode.records.size(); ++s)
    EXPECT_FALSE(episode.records[s].reward.has_value());  // intermediate zeros
  EXPECT_TRUE(episode.records.back().reward.has_value());  // the +1 at the goal
}

TEST(RunTraining, ParseFallbackDrawsRandomActionAndCounts) {
  BlackjackEnv env;
  ScriptedBackend backend(std::vector<std::string>(400, "gibberish reply"));
  ParlConfig config;
  config.episodes = 3;
  config.history_mode = HistoryMode::NoHistory;
  config.max_parse_retries = 2;
  config.seed = 5;
  const TrainResult result = run_training(env, backend, config);
  EXPECT_GT(result.fallback_total, 0);
  int from_rows = 0;
  for (const auto& row : result.metrics.rows) from_rows += row.fallback_count;
  EXPECT_EQ(from_rows, result.fallback_total);
  // 3 calls per decision: initial + 2 retries
  EXPECT_EQ(result.transcript.size() % 3, 0u);
}

TEST(RunTraining, BackendErrorsAbortButKeepPartialLiveTranscript) {
  const auto path =
      std::filesystem::temp_directory_path() / "parl_partial_transcript.jsonl";
  std::filesystem::remove(path);

  FrozenLakeEnv env(false);
  ScriptedBackend backend({"Right", "Right"});  // exhausts on the third call
  ParlConfig config = lake_config(HistoryMode::FullHistory, 3);
  config.max_parse_retries = 0;
  EXPECT_THROW(run_training(env, backend, config, path), ScriptExhaustedError);

  const Transcript partial = Transcript::load_jsonl(path);
  EXPECT_EQ(partial.size(), 2u);
  std::filesystem::remove(path);
}

TEST(RunTraining, DeterministicGivenSeedAndMock) {
  const auto run_csv = [] {
    FrozenLakeEnv env(false);
    PolicyTableBackend backend = optimal_lake_backend();
    return to_csv(run_training(env, backend, lake_config(HistoryMode::FullHistory, 6)).metrics);
  };
  EXPECT_EQ(run_csv(), run_csv());
}

TEST(RunInference, TrainedBufferFrozenAndPerEpisodeHistoryCleared) {
  FrozenLakeEnv env(false);
  PolicyTableBackend backend = optimal_lake_backend();
  const ParlConfig config = lake_config(HistoryMode::FullHistory, 3);
  TrainResult trained = run_training(env, backend, config);

  PolicyArtifact before;
  before.task = task_description(env.spec());
  before.buffer = trained.history;
  const std::string before_json = to_json(before);

  FrozenLakeEnv eval_env(false);
  Transcript transcript;
  PolicyTableBackend inner = optimal_lake_backend();
  RecordingBackend recording(inner, transcript);
  const InferenceResult result =
      run_inference(eval_env, recording, trained.history, 4, config);

  // Frozen-policy contract: byte-identical before vs after.
  PolicyArtifact after;
  after.task = task_description(env.spec());
  after.buffer = trained.history;
  EXPECT_EQ(to_json(after), before_json);

  EXPECT_EQ(result.report.episodes, 4);
  EXPECT_DOUBLE_EQ(result.report.mean_reward, 1.0);
  EXPECT_DOUBLE_EQ(result.report.mean_length, 6.0);

  // Every inference prompt renders the 3 trained episodes plus the current
  // one, and never steps from a previous evaluation episode.
  for (const auto& entry : transcript.entries()) {
    const std::string& prompt = entry.request.messages.back().content;
    const auto headers = oracles::episode_headers(prompt);
    EXPECT_EQ(headers, (std::vector<int>{1, 2, 3, 4}));
  }
}

TEST(RunInference, CurrentOnlyModeDropsTrainedHistory) {
  FrozenLakeEnv env(false);
  PolicyTableBackend backend = optimal_lake_backend();
  ParlConfig config = lake_config(HistoryMode::FullHistory, 3);
  TrainResult trained = run_training(env, backend, config);

  config.inference_history = InferenceHistory::CurrentOnly;
  FrozenLakeEnv eval_env(false);
  Transcript transcript;
  PolicyTableBackend inner = optimal_lake_backend();
  RecordingBackend recording(inner, transcript);
  run_inference(eval_env, recording, trained.history, 2, config);
  for (const auto& entry : transcript.entries()) {
    const auto headers =
        oracles::episode_headers(entry.request.messages.back().content);
    EXPECT_EQ(headers, std::vector<int>{1});
  }
}

TEST(RunInference, NoHistoryPromptsOmitTrainedEpisodes) {
  FrozenLakeEnv env(false);
  PolicyTableBackend backend = optimal_lake_backend();
  const ParlConfig config = lake_config(HistoryMode::NoHistory, 3);
  TrainResult trained = run_training(env, backend, config);
  EXPECT_EQ(trained.history.completed_episodes.size(), 3u);  // stored, not rendered

  FrozenLakeEnv eval_env(false);
  Transcript transcript;
  PolicyTableBackend inner = optimal_lake_backend();
  RecordingBackend recording(inner, transcript);
  run_inference(eval_env, recording, trained.history, 2, config);
  for (const auto& entry : transcript.entries()) {
    const auto headers =
        oracles::episode_headers(entry.request.messages.back().content);
    ASSERT_EQ(headers.size(), 1u);
  }
}

TEST(RunTraining, SingleUserMessageLayout) {
  FrozenLakeEnv env(false);
  Transcript transcript;
  PolicyTableBackend inner = optimal_lake_backend();
  RecordingBackend recording(inner, transcript);
  ParlConfig config = lake_config(HistoryMode::FullHistory, 1);
  config.single_user_message = true;
  run_training(env, recording, config);
  for (const auto& entry : transcript.entries()) {
    ASSERT_EQ(entry.request.messages.size(), 1u);
    EXPECT_EQ(entry.request.messages[0].role, Role::User);
    EXPECT_NE(entry.request.messages[0].content.find("Frozen Lake"),
              std::string::npos);
  }
}

TEST(TaskDescriptionText, BlackjackMatchesPaperFragments) {
  const TaskDescription task = task_description(blackjack_spec());
  EXPECT_EQ(task.goal_text.rfind("Blackjack is a card game where the goal is to get "
                                 "as close to 21 as possible without exceeding it.",
                                 0),
            0u);
  EXPECT_NE(task.actions_text.find("0: Stick (Stop), 1: Hit (Draw)"),
            std::string::npos);
  EXPECT_NE(task.rewards_text.find("+1: Win, -1: Lose, 0: Draw."), std::string::npos);
}

TEST(TaskDescriptionText, ActionsTextEnumeratesEveryAction) {
  for (EnvId id : {EnvId::Blackjack, EnvId::FrozenLake, EnvId::Taxi}) {
    const auto env = make_env(id);
    const TaskDescription task = task_description(env->spec());
    EXPECT_FALSE(task.goal_text.empty());
    EXPECT_FALSE(task.state_schema_text.empty());
    EXPECT_FALSE(task.rewards_text.empty());
    for (int a = 0; a < env->spec().action_count; ++a) {
      const std::string needle = std::to_string(a) + ": " +
                                 env->spec().action_names[static_cast<std::size_t>(a)];
      EXPECT_NE(task.actions_text.find(needle), std::string::npos)
          << env_name(id) << " missing " << needle;
    }
  }
}

TEST(PolicyArtifactTest, JsonRoundTrip) {
  FrozenLakeEnv env(false);
  PolicyTableBackend backend = optimal_lake_backend();
  const TrainResult trained =
      run_training(env, backend, lake_config(HistoryMode::FullHistory, 2));

  PolicyArtifact artifact;
  artifact.env = EnvId::FrozenLake;
  artifact.decode_mode = DecodeMode::Script;
  artifact.include_usable_ace = false;
  artifact.task = task_description(env.spec());
  artifact.buffer = trained.history;

  const PolicyArtifact restored = policy_artifact_from_json(to_json(artifact));
  EXPECT_EQ(restored.env, EnvId::FrozenLake);
  EXPECT_EQ(restored.decode_mode, DecodeMode::Script);
  EXPECT_FALSE(restored.include_usable_ace);
  EXPECT_EQ(restored.buffer.mode, HistoryMode::FullHistory);
  EXPECT_EQ(restored.buffer.completed_episodes, artifact.buffer.completed_episodes);
  EXPECT_EQ(restored.task, artifact.task);
}
