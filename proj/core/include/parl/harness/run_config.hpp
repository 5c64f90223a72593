#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "parl/agent/loop.hpp"
#include "parl/baselines/hyper.hpp"
#include "parl/envs/env.hpp"

namespace parl {

enum class AgentKind { Parl, Dqn, Ppo, A2c, Random, Scripted };

std::string agent_kind_name(AgentKind kind);
AgentKind agent_kind_from_name(const std::string& name);

/// Everything one experiment run needs, mirrored by the TOML config file.
struct RunConfig {
  EnvId env = EnvId::FrozenLake;
  AgentKind agent = AgentKind::Parl;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path out_dir = "runs/out";
  std::string backend = "http";  // http | mock:<path> | replay:<path>
  int eval_episodes = 100;
  std::string scripted_policy_path;  // scripted agent only

  EnvOptions env_options;
  ParlConfig parl;
  TrainHyper train;
};

RunConfig run_config_from_toml(const std::string& text);
std::string run_config_to_toml(const RunConfig& config);

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace parl
