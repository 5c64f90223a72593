#include "parl/agent/history.hpp"

#include <json.hpp>

#include "../json_detail.hpp"
#include "parl/errors.hpp"

namespace parl {

using nlohmann::json;

std::string history_mode_name(HistoryMode mode) {
  switch (mode) {
    case HistoryMode::FullHistory: return "full";
    case HistoryMode::RandomRewards: return "random-rewards";
    case HistoryMode::NoHistory: return "none";
  }
  throw ConfigError("history_mode_name: unknown mode");
}

HistoryMode history_mode_from_name(const std::string& name) {
  if (name == "full") return HistoryMode::FullHistory;
  if (name == "random-rewards") return HistoryMode::RandomRewards;
  if (name == "none") return HistoryMode::NoHistory;
  throw ConfigError("unknown history mode: " + name);
}

void HistoryBuffer::begin_episode(std::string initial_state_text,
                                  Observation raw_observation) {
  if (episode_open)
    throw ProtocolError("begin_episode: previous episode still open");
  current_episode = EpisodeLog{};
  current_episode.initial_state_text = std::move(initial_state_text);
  current_episode.raw_observations.push_back(std::move(raw_observation));
  episode_open = true;
}

void HistoryBuffer::append_step(StepRecord record, Observation raw_observation,
                                double true_reward) {
  if (!episode_open) throw ProtocolError("append_step: no open episode");
  current_episode.append(std::move(record), std::move(raw_observation), true_reward);
}

void HistoryBuffer::end_episode() {
  if (!episode_open) throw ProtocolError("end_episode: no open episode");
  completed_episodes.push_back(std::move(current_episode));
  current_episode = EpisodeLog{};
  episode_open = false;
}

const std::string& HistoryBuffer::current_state_text() const {
  if (!episode_open)
    throw ProtocolError("current_state_text: no open episode");
  if (current_episode.records.empty()) return current_episode.initial_state_text;
  return current_episode.records.back().new_state_text;
}

std::string to_json(const PolicyArtifact& artifact) {
  json episodes = json::array();
  for (const auto& e : artifact.buffer.completed_episodes)
    episodes.push_back(detail::episode_json(e));
  const json j{
      {"kind", "prompt-policy"},
      {"env", env_name(artifact.env)},
      {"decode_mode", decode_mode_name(artifact.decode_mode)},
      {"include_usable_ace", artifact.include_usable_ace},
      {"history_mode", history_mode_name(artifact.buffer.mode)},
      {"task",
       {{"goal", artifact.task.goal_text},
        {"actions", artifact.task.actions_text},
        {"state_schema", artifact.task.state_schema_text},
        {"rewards", artifact.task.rewards_text}}},
      {"episodes", episodes},
  };
  return j.dump(2);
}

PolicyArtifact policy_artifact_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("policy artifact is not valid JSON: ") + e.what());
  }
  if (j.value("kind", "") != "prompt-policy")
    throw ProtocolError("policy artifact has the wrong kind");
  PolicyArtifact artifact;
  artifact.env = env_from_name(j.at("env").get<std::string>());
  artifact.decode_mode = decode_mode_from_name(j.at("decode_mode").get<std::string>());
  artifact.include_usable_ace = j.value("include_usable_ace", true);
  artifact.buffer.mode = history_mode_from_name(j.at("history_mode").get<std::string>());
  const auto& task = j.at("task");
  artifact.task.goal_text = task.at("goal").get<std::string>();
  artifact.task.actions_text = task.at("actions").get<std::string>();
  artifact.task.state_schema_text = task.at("state_schema").get<std::string>();
  artifact.task.rewards_text = task.at("rewards").get<std::string>();
  for (const auto& e : j.at("episodes"))
    artifact.buffer.completed_episodes.push_back(detail::episode_from_value(e));
  return artifact;
}

}  // namespace parl
