#include "parl/agent/loop.hpp"

#include <iostream>

#include "parl/errors.hpp"

namespace parl {

namespace {

struct StepDecision {
  ActionId action;
  bool fallback = false;
  long prompt_tokens = 0;
  int dropped_render = 0;
};

CompletionRequest make_request(const BuiltPrompt& prompt, const ParlConfig& config) {
  CompletionRequest request;
  request.model = config.model;
  request.temperature = config.temperature;
  request.max_tokens = config.max_tokens;
  if (config.single_user_message) {
    request.messages = {{Role::User, prompt.text}};
  } else {
    request.messages = {{Role::System, prompt.task_text},
                        {Role::User, prompt.body_text}};
  }
  return request;
}

// One prompt/reply/parse cycle with bounded retries and a random fallback.
StepDecision decide_action(const TaskDescription& task, const HistoryBuffer& history,
                           const std::string& state_text, const EnvSpec& spec,
                           Backend& backend, const ParlConfig& config,
                           SeededRng& agent_rng) {
  const PromptBudget budget{config.token_budget, config.truncation_policy};
  const BuiltPrompt prompt = build_prompt(task, history, state_text, budget);
  if (prompt.dropped_episodes > 0) {
    std::cerr << "warning: prompt over budget; dropped " << prompt.dropped_episodes
              << " oldest episode(s) from the rendering\n";
  }
  StepDecision decision;
  decision.prompt_tokens = prompt.token_estimate;
  decision.dropped_render = prompt.dropped_episodes > 0 ? 1 : 0;

  const CompletionRequest request = make_request(prompt, config);
  const int attempts = 1 + std::max(0, config.max_parse_retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::string reply = complete(backend, request);
    try {
      decision.action = parse_action(reply, spec);
      return decision;
    } catch (const ParseError&) {
      // retry with the identical request; mocks answer deterministically and
      // a sampled backend may produce something parseable
    }
  }
  decision.action =
      ActionId{static_cast<int>(agent_rng.uniform_int(static_cast<std::uint32_t>(spec.action_count)))};
  decision.fallback = true;
  return decision;
}

struct EpisodeStats {
  double true_reward = 0.0;
  int length = 0;
  int fallbacks = 0;
  long last_prompt_tokens = 0;
  int dropped_renders = 0;
};

// Plays one episode, appending each step to the buffer. The buffer decides
// what later prompts render; metrics always see true rewards.
EpisodeStats play_episode(Env& env, Backend& backend, const ParlConfig& config,
                          const TaskDescription& task, const DecodeContext& decode,
                          HistoryBuffer& history, int episode_number,
                          SeededRng& env_rng, SeededRng& agent_rng,
                          SeededRng& reward_rng) {
  const EnvSpec& spec = env.spec();
  EpisodeStats stats;

  Observation obs = env.reset(env_rng);
  history.begin_episode(render_state(spec, obs, decode), obs);

  int step = 0;
  while (true) {
    const StepDecision decision =
        decide_action(task, history, history.current_state_text(), spec, backend,
                      config, agent_rng);
    stats.last_prompt_tokens = decision.prompt_tokens;
    stats.dropped_renders += decision.dropped_render;
    if (decision.fallback) ++stats.fallbacks;

    const StepOutcome outcome = env.step(decision.action, env_rng);
    stats.true_reward += outcome.reward;
    ++stats.length;

    std::optional<double> displayed = outcome.reward;
    if (history.mode == HistoryMode::RandomRewards)
      displayed = randomize_reward(outcome.reward, spec.reward_set, reward_rng);
    if (config.omit_zero_rewards && displayed && *displayed == 0.0)
      displayed.reset();

    StepRecord record;
    record.episode = episode_number;
    record.step = step++;
    record.action = decision.action;
    record.action_name = spec.action_name(decision.action);
    record.new_state_text = render_state(spec, outcome.observation, decode);
    record.reward = displayed;
    record.terminal = outcome.terminated;
    history.append_step(std::move(record), outcome.observation, outcome.reward);

    if (outcome.terminated || outcome.truncated) break;
  }
  return stats;
}

}  // namespace

TrainResult run_training(Env& env, Backend& backend, const ParlConfig& config,
                         std::optional<std::filesystem::path> live_transcript_path) {
  TrainResult result;
  result.history.mode = config.history_mode;

  RecordingBackend recorded(backend, result.transcript, std::move(live_transcript_path));
  const TaskDescription task = task_description(env.spec());
  const DecodeContext decode =
      make_decode_context(env, config.decode_mode, config.include_usable_ace);

  SeededRng root(config.seed);
  SeededRng env_rng = root.substream("env");
  SeededRng agent_rng = root.substream("agent");
  SeededRng reward_rng = root.substream("reward-randomizer");

  for (int episode = 1; episode <= config.episodes; ++episode) {
    const EpisodeStats stats =
        play_episode(env, recorded, config, task, decode, result.history, episode,
                     env_rng, agent_rng, reward_rng);
    result.history.end_episode();
    result.fallback_total += stats.fallbacks;
    result.dropped_episode_renders += stats.dropped_renders;
    result.metrics.append(MetricRow{episode, stats.true_reward, stats.length,
                                    stats.fallbacks, stats.last_prompt_tokens});
  }
  return result;
}

InferenceResult run_inference(Env& env, Backend& backend, const HistoryBuffer& trained,
                              int episodes, const ParlConfig& config,
                              std::optional<std::filesystem::path> live_transcript_path) {
  InferenceResult result;

  // Work on a copy; the trained policy is never modified. Evaluation
  // episodes are abandoned at episode end instead of joining the history.
  HistoryBuffer scratch;
  scratch.mode = trained.mode;
  if (config.inference_history == InferenceHistory::TrainedPlusCurrent)
    scratch.completed_episodes = trained.completed_episodes;

  RecordingBackend recorded(backend, result.transcript, std::move(live_transcript_path));
  const TaskDescription task = task_description(env.spec());
  const DecodeContext decode =
      make_decode_context(env, config.decode_mode, config.include_usable_ace);

  SeededRng root(config.seed);
  SeededRng env_rng = root.substream("eval-env");
  SeededRng agent_rng = root.substream("eval-agent");
  SeededRng reward_rng = root.substream("eval-reward-randomizer");

  const int base_episode = static_cast<int>(scratch.completed_episodes.size());
  for (int episode = 1; episode <= episodes; ++episode) {
    const EpisodeStats stats =
        play_episode(env, recorded, config, task, decode, scratch,
                     base_episode + 1, env_rng, agent_rng, reward_rng);
    // Clear the per-episode history: drop the scratch episode entirely.
    scratch.current_episode = EpisodeLog{};
    scratch.episode_open = false;
    result.fallback_total += stats.fallbacks;
    result.metrics.append(MetricRow{episode, stats.true_reward, stats.length,
                                    stats.fallbacks, stats.last_prompt_tokens});
  }

  result.report = summarize(result.metrics.rewards(), result.metrics.lengths());
  return result;
}

}  // namespace parl
