#pragma once

#include <utility>

#include "parl/baselines/agents.hpp"
#include "parl/baselines/hyper.hpp"
#include "parl/baselines/ppo.hpp"

namespace parl {

/// One-step advantage: reward + gamma * V(s') - V(s), with the bootstrap
/// dropped on terminal transitions.
inline double a2c_advantage(double reward, double gamma, double v_next,
                            double v_current, bool terminal) {
  return terminal ? reward - v_current : reward + gamma * v_next - v_current;
}

struct A2cSample {
  Features state;
  int action = 0;
  double advantage = 0.0;     // treated as a constant by the policy gradient
  double value_target = 0.0;  // bootstrap target for the critic
};

/// -mean log pi(a|s) * advantage + value_coef * value MSE
/// - entropy_coef * entropy, with exact gradients for actor and critic.
ActorCriticGrads a2c_loss(std::span<const A2cSample> batch, const MlpParams& actor,
                          const MlpParams& critic, double value_coef,
                          double entropy_coef);

/// Synchronous advantage actor-critic updating every a2c_nstep steps.
std::pair<BaselineAgent, MetricSeries> train_a2c(Env& env, const TrainHyper& hyper,
                                                 SeededRng& rng);

}  // namespace parl
