#include "parl/types.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace parl {

using nlohmann::json;

double EpisodeLog::true_total_reward() const {
  double total = 0.0;
  for (double r : true_rewards) total += r;
  return total;
}

void EpisodeLog::append(StepRecord record, Observation raw_observation,
                        double true_reward) {
  if (record.reward) total_reward += *record.reward;
  records.push_back(std::move(record));
  raw_observations.push_back(std::move(raw_observation));
  true_rewards.push_back(true_reward);
}

bool RewardSet::contains(double reward) const {
  for (double v : values) {
    if (v == reward) return true;
  }
  return false;
}

namespace {

json record_to_json(const StepRecord& r) {
  json j{{"episode", r.episode},
         {"step", r.step},
         {"action", r.action.index},
         {"action_name", r.action_name},
         {"state", r.new_state_text},
         {"terminal", r.terminal}};
  if (r.reward) {
    j["reward"] = *r.reward;
  } else {
    j["reward"] = nullptr;
  }
  return j;
}

StepRecord record_from_json(const json& j) {
  StepRecord r;
  r.episode = j.at("episode").get<int>();
  r.step = j.at("step").get<int>();
  r.action.index = j.at("action").get<int>();
  r.action_name = j.at("action_name").get<std::string>();
  r.new_state_text = j.at("state").get<std::string>();
  if (j.contains("reward") && !j.at("reward").is_null()) {
    r.reward = j.at("reward").get<double>();
  }
  r.terminal = j.at("terminal").get<bool>();
  return r;
}

json observation_to_json(const Observation& obs) {
  if (const auto* bj = std::get_if<BlackjackObs>(&obs)) {
    return json{{"kind", "blackjack"},
                {"player_sum", bj->player_sum},
                {"dealer_card", bj->dealer_card},
                {"usable_ace", bj->usable_ace},
                {"player_cards", bj->player_cards},
                {"dealer_visible_card", bj->dealer_visible_card}};
  }
  const auto& d = std::get<DiscreteIndex>(obs);
  return json{{"kind", "discrete"}, {"value", d.value}, {"space_size", d.space_size}};
}

Observation observation_from(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "blackjack") {
    BlackjackObs bj;
    bj.player_sum = j.at("player_sum").get<int>();
    bj.dealer_card = j.at("dealer_card").get<int>();
    bj.usable_ace = j.at("usable_ace").get<bool>();
    bj.player_cards = j.at("player_cards").get<std::vector<int>>();
    bj.dealer_visible_card = j.at("dealer_visible_card").get<int>();
    return bj;
  }
  return DiscreteIndex{j.at("value").get<int>(), j.at("space_size").get<int>()};
}

json episode_to_json(const EpisodeLog& log) {
  json records = json::array();
  for (const auto& r : log.records) records.push_back(record_to_json(r));
  json raws = json::array();
  for (const auto& o : log.raw_observations) raws.push_back(observation_to_json(o));
  return json{{"initial_state", log.initial_state_text},
              {"records", records},
              {"total_reward", log.total_reward},
              {"raw_observations", raws},
              {"true_rewards", log.true_rewards}};
}

EpisodeLog episode_from_json(const json& j) {
  EpisodeLog log;
  log.initial_state_text = j.at("initial_state").get<std::string>();
  for (const auto& r : j.at("records")) log.records.push_back(record_from_json(r));
  log.total_reward = j.at("total_reward").get<double>();
  for (const auto& o : j.at("raw_observations"))
    log.raw_observations.push_back(observation_from(o));
  log.true_rewards = j.at("true_rewards").get<std::vector<double>>();
  return log;
}

}  // namespace

std::string to_jsonl(const EpisodeLog& log) {
  std::ostringstream out;
  for (const auto& r : log.records) out << record_to_json(r).dump() << '\n';
  return out.str();
}

std::string to_json(const StepRecord& record) { return record_to_json(record).dump(); }

StepRecord step_record_from_json(const std::string& text) {
  return record_from_json(json::parse(text));
}

std::string to_json(const EpisodeLog& log) { return episode_to_json(log).dump(); }

EpisodeLog episode_log_from_json(const std::string& text) {
  return episode_from_json(json::parse(text));
}

std::string to_json(const RewardSet& rewards) {
  return json{{"values", rewards.values}}.dump();
}

RewardSet reward_set_from_json(const std::string& text) {
  return RewardSet{json::parse(text).at("values").get<std::vector<double>>()};
}

std::string to_json(const Observation& observation) {
  return observation_to_json(observation).dump();
}

Observation observation_from_json(const std::string& text) {
  return observation_from(json::parse(text));
}

namespace detail {
// Exposed for modules that embed these encodings in larger documents.
nlohmann::json observation_json(const Observation& obs) { return observation_to_json(obs); }
Observation observation_from_value(const nlohmann::json& j) { return observation_from(j); }
nlohmann::json episode_json(const EpisodeLog& log) { return episode_to_json(log); }
EpisodeLog episode_from_value(const nlohmann::json& j) { return episode_from_json(j); }
}  // namespace detail

}  // namespace parl
