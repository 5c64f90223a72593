#pragma once

#include <map>
#include <optional>
#include <string>

#include "parl/baselines/featurize.hpp"
#include "parl/baselines/mlp.hpp"
#include "parl/envs/env.hpp"
#include "parl/harness/metrics.hpp"

namespace parl {

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Trained baseline parameters: a Q-network or policy head, plus a critic
/// for the actor-critic methods. Serializes to flat JSON (shapes plus
/// row-major values) for reload.
struct BaselineAgent {
  std::string kind;  // "dqn" | "ppo" | "a2c"
  EnvId env = EnvId::FrozenLake;
  MlpParams primary;
  std::optional<MlpParams> value;

  ActionId greedy_action(const EnvSpec& spec, const Observation& obs) const;
};

std::string to_json(const BaselineAgent& agent);
BaselineAgent baseline_agent_from_json(const std::string& text);

/// Action source for evaluation rollouts.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual ActionId act(const Observation& obs, SeededRng& rng) = 0;
};

class BaselinePolicy final : public Policy {
 public:
  BaselinePolicy(const BaselineAgent& agent, const EnvSpec& spec)
      : agent_(agent), spec_(spec) {}
  ActionId act(const Observation& obs, SeededRng&) override {
    return agent_.greedy_action(spec_, obs);
  }

 private:
  const BaselineAgent& agent_;
  const EnvSpec& spec_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(int action_count) : action_count_(action_count) {}
  ActionId act(const Observation&, SeededRng& rng) override {
    return ActionId{static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(action_count_)))};
  }

 private:
  int action_count_;
};

/// Fixed state-index -> action table (discrete-index environments only).
class ScriptedPolicy final : public Policy {
 public:
  explicit ScriptedPolicy(std::map<int, int> action_by_state)
      : action_by_state_(std::move(action_by_state)) {}
  static ScriptedPolicy from_json_file(const std::string& path);
  ActionId act(const Observation& obs, SeededRng&) override;

 private:
  std::map<int, int> action_by_state_;
};

/// Greedy rollouts; mean/std of reward and episode length. When `series`
/// is given, per-episode rows are appended to it.
EvalReport policy_eval(Policy& policy, Env& env, int episodes, SeededRng& rng,
                       MetricSeries* series = nullptr);

}  // namespace parl
