#pragma once

#include <utility>

#include "parl/baselines/agents.hpp"
#include "parl/baselines/hyper.hpp"

namespace parl {

/// Clipped surrogate: min(ratio * advantage, clip(ratio, 1 +/- eps) * advantage).
double ppo_objective(double ratio, double advantage, double clip_epsilon);

/// One collected decision with its frozen sampling-time log-probability and
/// precomputed one-step advantage / value target.
struct PpoSample {
  Features state;
  int action = 0;
  double old_log_prob = 0.0;
  double advantage = 0.0;
  double value_target = 0.0;
};

struct ActorCriticGrads {
  double loss = 0.0;
  MlpParams policy_grads;
  MlpParams value_grads;
};

/// Minibatch loss: -mean clipped surrogate + value_coef * value MSE
/// - entropy_coef * entropy, with exact gradients for both networks.
ActorCriticGrads ppo_loss(std::span<const PpoSample> batch, const MlpParams& policy,
                          const MlpParams& value, double clip_epsilon,
                          double value_coef, double entropy_coef);

/// Rollout-based training with the clipped objective; several epochs of
/// minibatch updates per rollout. Stops once total_episodes have finished.
std::pair<BaselineAgent, MetricSeries> train_ppo(Env& env, const TrainHyper& hyper,
                                                 SeededRng& rng);

}  // namespace parl
