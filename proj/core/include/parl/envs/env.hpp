#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parl/rng.hpp"
#include "parl/types.hpp"

namespace parl {

enum class EnvId { Blackjack, FrozenLake, Taxi };
enum class ObservationKind { BlackjackTuple, DiscreteIndex };

std::string env_name(EnvId id);
EnvId env_from_name(const std::string& name);  // throws ConfigError

/// Static description of an environment: action space, reward set, caps.
struct EnvSpec {
  EnvId id = EnvId::Blackjack;
  int action_count = 0;
  std::vector<std::string> action_names;
  RewardSet reward_set;
  int max_steps = 100;
  ObservationKind observation_kind = ObservationKind::DiscreteIndex;

  const std::string& action_name(ActionId action) const;
};

/// JSON dump of an EnvSpec, written into run directories for provenance.
std::string to_json(const EnvSpec& spec);

struct StepOutcome {
  Observation observation;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
};

/// Single-owner mutable episode simulator. One instance per rollout; run
/// many instances concurrently with independent RNG substreams.
class Env {
 public:
  virtual ~Env() = default;
  virtual const EnvSpec& spec() const = 0;
  virtual Observation reset(SeededRng& rng) = 0;
  virtual StepOutcome step(ActionId action, SeededRng& rng) = 0;
  virtual bool done() const = 0;
};

struct EnvOptions {
  bool slippery = true;             // FrozenLake transition noise
  int max_steps = 100;
  std::optional<std::string> map_file;  // grid override, plain-text format
};

std::unique_ptr<Env> make_env(EnvId id, const EnvOptions& options = {});
std::unique_ptr<Env> make_env(const std::string& name, const EnvOptions& options = {});

}  // namespace parl
