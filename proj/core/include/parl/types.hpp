#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace parl {

/// Index into an environment's action space.
struct ActionId {
  int index = 0;
  auto operator<=>(const ActionId&) const = default;
};

/// Blackjack observation: the (sum, dealer card, usable ace) tuple plus the
/// raw card lists needed to render the bracketed prompt form.
struct BlackjackObs {
  int player_sum = 0;
  int dealer_card = 0;  // value of the dealer's visible card, 1..10
  bool usable_ace = false;
  std::vector<int> player_cards;
  int dealer_visible_card = 0;
  bool operator==(const BlackjackObs&) const = default;
};

/// Observation for environments whose state is a single integer index.
struct DiscreteIndex {
  int value = 0;
  int space_size = 1;
  bool operator==(const DiscreteIndex&) const = default;
};

using Observation = std::variant<BlackjackObs, DiscreteIndex>;

/// One (action, new state, reward) interaction entry.
struct StepRecord {
  int episode = 0;
  int step = 0;
  ActionId action;
  std::string action_name;
  std::string new_state_text;
  std::optional<double> reward;  // absent when the reward is withheld from the prompt
  bool terminal = false;
  bool operator==(const StepRecord&) const = default;
};

/// Ordered step records for one episode, plus side storage with the raw
/// observations and unsubstituted rewards that baselines and metrics use.
/// `total_reward` sums the rendered (possibly substituted) record rewards;
/// `true_rewards` always holds what the environment actually emitted.
struct EpisodeLog {
  std::string initial_state_text;
  std::vector<StepRecord> records;
  double total_reward = 0.0;

  std::vector<Observation> raw_observations;  // initial + one per step
  std::vector<double> true_rewards;           // one per step

  std::size_t length() const { return records.size(); }
  double true_total_reward() const;
  void append(StepRecord record, Observation raw_observation, double true_reward);

  bool operator==(const EpisodeLog&) const = default;
};

/// The finite set of rewards an environment can emit.
struct RewardSet {
  std::vector<double> values;
  bool contains(double reward) const;
  bool operator==(const RewardSet&) const = default;
};

// JSON serialization. `to_jsonl` is the external interface for episode
// logs: one record object per line with keys episode, step, action,
// action_name, state, reward, terminal.
std::string to_jsonl(const EpisodeLog& log);
std::string to_json(const StepRecord& record);
StepRecord step_record_from_json(const std::string& text);
std::string to_json(const EpisodeLog& log);
EpisodeLog episode_log_from_json(const std::string& text);
std::string to_json(const RewardSet& rewards);
RewardSet reward_set_from_json(const std::string& text);
std::string to_json(const Observation& observation);
Observation observation_from_json(const std::string& text);

}  // namespace parl
