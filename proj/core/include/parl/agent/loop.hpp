#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "parl/agent/history.hpp"
#include "parl/agent/prompt.hpp"
#include "parl/harness/metrics.hpp"
#include "parl/llm/backends.hpp"

namespace parl {

/// Whether inference prompts carry the frozen training history in addition
/// to the episode in progress.
enum class InferenceHistory { TrainedPlusCurrent, CurrentOnly };

struct ParlConfig {
  int episodes = 100;
  DecodeMode decode_mode = DecodeMode::Script;
  HistoryMode history_mode = HistoryMode::FullHistory;
  int max_parse_retries = 3;
  TruncationPolicy truncation_policy = TruncationPolicy::DropOldestEpisodes;
  std::uint64_t seed = 1;

  std::size_t token_budget = 120000;
  bool omit_zero_rewards = false;   // withhold 0-valued step rewards from the prompt
  bool include_usable_ace = true;   // blackjack script decoding detail
  InferenceHistory inference_history = InferenceHistory::TrainedPlusCurrent;

  // Wire settings. The prompt is sent as one system message (task
  // description) plus one user message (history and action request);
  // single_user_message folds everything into the user message instead.
  std::string model = "gpt-4o";
  double temperature = 0.0;
  int max_tokens = 16;
  bool single_user_message = false;
};

struct TrainResult {
  HistoryBuffer history;   // the trained policy
  MetricSeries metrics;    // per-episode true rewards
  Transcript transcript;   // every LLM call, in order
  int fallback_total = 0;  // replies that fell back to a random action
  int dropped_episode_renders = 0;  // prompts built with trimmed history
};

/// Runs config.episodes training episodes, accumulating history per the
/// configured mode. Backend errors abort the run; when live_transcript_path
/// is set every call is flushed there as it happens, so partial transcripts
/// survive.
TrainResult run_training(Env& env, Backend& backend, const ParlConfig& config,
                         std::optional<std::filesystem::path> live_transcript_path = {});

struct InferenceResult {
  EvalReport report;
  MetricSeries metrics;
  Transcript transcript;
  int fallback_total = 0;
};

/// Evaluation episodes against a frozen training buffer: each prompt is the
/// task description, the trained history (per inference_history), and the
/// current episode's steps, which are discarded when the episode ends.
InferenceResult run_inference(Env& env, Backend& backend, const HistoryBuffer& trained,
                              int episodes, const ParlConfig& config,
                              std::optional<std::filesystem::path> live_transcript_path = {});

}  // namespace parl
