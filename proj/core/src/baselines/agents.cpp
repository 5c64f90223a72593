#include "parl/baselines/agents.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "parl/errors.hpp"

namespace parl {

std::vector<double> softmax(std::span<const double> logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> probs(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - peak);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

ActionId BaselineAgent::greedy_action(const EnvSpec& spec, const Observation& obs) const {
  const Features feat = featurize(spec, obs);
  const std::vector<double> scores = mlp_forward(primary, feat);
  const auto best = std::max_element(scores.begin(), scores.end());
  return ActionId{static_cast<int>(best - scores.begin())};
}

std::string to_json(const BaselineAgent& agent) {
  nlohmann::json j{{"kind", agent.kind},
                   {"env", env_name(agent.env)},
                   {"primary", nlohmann::json::parse(mlp_to_json(agent.primary))}};
  if (agent.value)
    j["value"] = nlohmann::json::parse(mlp_to_json(*agent.value));
  return j.dump();
}

BaselineAgent baseline_agent_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("agent artifact is not valid JSON: ") + e.what());
  }
  BaselineAgent agent;
  agent.kind = j.at("kind").get<std::string>();
  agent.env = env_from_name(j.at("env").get<std::string>());
  agent.primary = mlp_from_json(j.at("primary").dump());
  if (j.contains("value")) agent.value = mlp_from_json(j.at("value").dump());
  return agent;
}

ScriptedPolicy ScriptedPolicy::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scripted policy: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scripted policy " + path + " is not valid JSON: " + e.what());
  }
  std::map<int, int> table;
  for (const auto& [key, value] : j.items()) {
    table[std::stoi(key)] = value.get<int>();
  }
  return ScriptedPolicy(std::move(table));
}

ActionId ScriptedPolicy::act(const Observation& obs, SeededRng&) {
  const auto* d = std::get_if<DiscreteIndex>(&obs);
  if (!d) throw ProtocolError("scripted policy needs a discrete-index observation");
  const auto it = action_by_state_.find(d->value);
  if (it == action_by_state_.end())
    throw ProtocolError("scripted policy has no action for state " +
                        std::to_string(d->value));
  return ActionId{it->second};
}

EvalReport policy_eval(Policy& policy, Env& env, int episodes, SeededRng& rng,
                       MetricSeries* series) {
  SeededRng env_rng = rng.substream("eval-env");
  SeededRng policy_rng = rng.substream("eval-policy");

  std::vector<double> rewards;
  std::vector<double> lengths;
  rewards.reserve(static_cast<std::size_t>(episodes));
  lengths.reserve(static_cast<std::size_t>(episodes));

  for (int episode = 1; episode <= episodes; ++episode) {
    Observation obs = env.reset(env_rng);
    double total = 0.0;
    int steps = 0;
    while (true) {
      const StepOutcome outcome = env.step(policy.act(obs, policy_rng), env_rng);
      total += outcome.reward;
      ++steps;
      obs = outcome.observation;
      if (outcome.terminated || outcome.truncated) break;
    }
    rewards.push_back(total);
    lengths.push_back(static_cast<double>(steps));
    if (series) series->append(MetricRow{episode, total, steps, 0, 0});
  }
  return summarize(rewards, lengths);
}

}  // namespace parl
