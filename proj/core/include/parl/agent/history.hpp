#pragma once

#include <string>
#include <vector>

#include "parl/agent/task_description.hpp"
#include "parl/decoding.hpp"
#include "parl/envs/env.hpp"
#include "parl/types.hpp"

namespace parl {

/// The three context ablations: everything, everything with substituted
/// rewards, or only the episode in progress.
enum class HistoryMode { FullHistory, RandomRewards, NoHistory };

std::string history_mode_name(HistoryMode mode);
HistoryMode history_mode_from_name(const std::string& name);

/// Accumulated interaction logs; under RandomRewards the records carry the
/// substituted rewards while true rewards live in each episode's side
/// storage. Completed episodes are stored in every mode -- NoHistory only
/// excludes them from prompt rendering.
struct HistoryBuffer {
  HistoryMode mode = HistoryMode::FullHistory;
  std::vector<EpisodeLog> completed_episodes;
  EpisodeLog current_episode;
  bool episode_open = false;

  /// 1-based index of the episode in progress (or the next one).
  int episode_index() const {
    return static_cast<int>(completed_episodes.size()) + 1;
  }

  void begin_episode(std::string initial_state_text, Observation raw_observation);
  void append_step(StepRecord record, Observation raw_observation, double true_reward);
  void end_episode();

  /// Text of the state the next action decision sees.
  const std::string& current_state_text() const;
};

/// Trained-policy artifact: the task description, mode, decode settings and
/// episode logs, serialized so an inference run can reload them from disk.
struct PolicyArtifact {
  EnvId env = EnvId::Blackjack;
  DecodeMode decode_mode = DecodeMode::Script;
  bool include_usable_ace = true;
  TaskDescription task;
  HistoryBuffer buffer;
};

std::string to_json(const PolicyArtifact& artifact);
PolicyArtifact policy_artifact_from_json(const std::string& text);

}  // namespace parl
