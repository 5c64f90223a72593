#pragma once

#include <cstdint>
#include <vector>

namespace parl {

/// Training hyperparameters shared by the three baselines. The paper leaves
/// these unreported; defaults are the community-standard values, with env
/// overrides applied by the harness where noted.
struct TrainHyper {
  double gamma = 0.99;
  double learning_rate = 1e-3;  // DQN/A2C default; PPO runs use 3e-4

  // epsilon-greedy schedule (DQN)
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::int64_t epsilon_decay_steps = 100000;  // ~20% of the expected step budget

  double clip_epsilon = 0.2;  // PPO
  int batch_size = 64;
  int target_sync_interval = 1000;  // env steps between target-network copies
  std::int64_t total_episodes = 100000;
  double entropy_coef = 0.01;
  double value_coef = 0.5;

  int replay_capacity = 50000;
  int train_freq = 4;       // env steps per gradient update (DQN)
  int warmup_steps = 1000;  // steps before DQN updates begin

  int ppo_rollout_steps = 2048;
  int ppo_epochs = 4;

  int a2c_nstep = 5;               // steps collected per A2C update
  bool a2c_nstep_returns = false;  // extension flag; default is the one-step form

  std::vector<int> hidden = {64, 64};
};

}  // namespace parl
