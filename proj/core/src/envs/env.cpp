#include "parl/envs/env.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "parl/envs/blackjack.hpp"
#include "parl/envs/frozen_lake.hpp"
#include "parl/envs/taxi.hpp"
#include "parl/errors.hpp"

namespace parl {

std::string env_name(EnvId id) {
  switch (id) {
    case EnvId::Blackjack: return "blackjack";
    case EnvId::FrozenLake: return "frozenlake";
    case EnvId::Taxi: return "taxi";
  }
  throw ConfigError("env_name: unknown env id");
}

EnvId env_from_name(const std::string& name) {
  if (name == "blackjack") return EnvId::Blackjack;
  if (name == "frozenlake") return EnvId::FrozenLake;
  if (name == "taxi") return EnvId::Taxi;
  throw ConfigError("unknown environment: " + name);
}

const std::string& EnvSpec::action_name(ActionId action) const {
  if (action.index < 0 || action.index >= action_count)
    throw InvalidActionError("action id outside the action space");
  return action_names[static_cast<std::size_t>(action.index)];
}

std::string to_json(const EnvSpec& spec) {
  nlohmann::json j{
      {"id", env_name(spec.id)},
      {"action_count", spec.action_count},
      {"action_names", spec.action_names},
      {"reward_set", spec.reward_set.values},
      {"max_steps", spec.max_steps},
      {"observation_kind", spec.observation_kind == ObservationKind::BlackjackTuple
                               ? "blackjack_tuple"
                               : "discrete_index"},
  };
  return j.dump(2);
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::unique_ptr<Env> make_env(EnvId id, const EnvOptions& options) {
  switch (id) {
    case EnvId::Blackjack:
      return std::make_unique<BlackjackEnv>();
    case EnvId::FrozenLake: {
      FrozenLakeMap map = options.map_file
                              ? FrozenLakeMap::from_text(slurp(*options.map_file))
                              : FrozenLakeMap::standard();
      return std::make_unique<FrozenLakeEnv>(options.slippery, options.max_steps,
                                             std::move(map));
    }
    case EnvId::Taxi: {
      TaxiMap map = options.map_file ? TaxiMap::from_text(slurp(*options.map_file))
                                     : TaxiMap::standard();
      return std::make_unique<TaxiEnv>(options.max_steps, std::move(map));
    }
  }
  throw ConfigError("make_env: unknown env id");
}

std::unique_ptr<Env> make_env(const std::string& name, const EnvOptions& options) {
  return make_env(env_from_name(name), options);
}

}  // namespace parl
