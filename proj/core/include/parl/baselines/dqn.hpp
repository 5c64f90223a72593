#pragma once

#include <utility>

#include "parl/baselines/agents.hpp"
#include "parl/baselines/hyper.hpp"
#include "parl/baselines/replay_buffer.hpp"

namespace parl {

/// Bootstrap target: reward when terminal, else reward + gamma * max_next_q.
inline double dqn_target(double reward, double gamma, double max_next_q,
                         bool terminal) {
  return terminal ? reward : reward + gamma * max_next_q;
}

struct LossGrads {
  double loss = 0.0;
  MlpParams grads;
};

/// Mean squared error between Q(s, a) and targets from the target network;
/// gradients flow only through the online network.
LossGrads dqn_loss(const std::vector<const Transition*>& batch, const MlpParams& online,
                   const MlpParams& target, double gamma);

/// Q-learning with a replay buffer, target network, and epsilon-greedy
/// exploration; evaluation is greedy.
std::pair<BaselineAgent, MetricSeries> train_dqn(Env& env, const TrainHyper& hyper,
                                                 SeededRng& rng);

}  // namespace parl
