#include "parl/baselines/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "parl/baselines/adam.hpp"

namespace parl {

LossGrads dqn_loss(const std::vector<const Transition*>& batch, const MlpParams& online,
                   const MlpParams& target, double gamma) {
  if (batch.empty()) throw std::domain_error("dqn_loss: empty batch");

  LossGrads result;
  result.grads = zeros_like(online);
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  ForwardCache cache;
  for (const Transition* t : batch) {
    const std::vector<double> q = mlp_forward(online, t->state, &cache);
    double max_next = 0.0;
    if (!t->terminal) {
      const std::vector<double> next_q = mlp_forward(target, t->next_state);
      max_next = *std::max_element(next_q.begin(), next_q.end());
    }
    const double y = dqn_target(t->reward, gamma, max_next, t->terminal);
    const double err = q[static_cast<std::size_t>(t->action)] - y;
    result.loss += err * err * inv_n;

    std::vector<double> grad_out(q.size(), 0.0);
    grad_out[static_cast<std::size_t>(t->action)] = 2.0 * err * inv_n;
    mlp_backward_into(online, cache, grad_out, result.grads);
  }
  return result;
}

namespace {

[[noreturn]] void abort_on_nan(const char* where, std::int64_t episode,
                               std::int64_t steps, const MlpParams& params) {
  double max_abs = 0.0;
  for (const auto& layer : params.layers)
    for (double w : layer.weights.data) max_abs = std::max(max_abs, std::abs(w));
  std::ostringstream out;
  out << where << ": loss is not finite at episode " << episode << ", step " << steps
      << "; max |weight| = " << max_abs;
  throw std::runtime_error(out.str());
}

}  // namespace

std::pair<BaselineAgent, MetricSeries> train_dqn(Env& env, const TrainHyper& hyper,
                                                 SeededRng& rng) {
  const EnvSpec& spec = env.spec();
  SeededRng init_rng = rng.substream("init");
  SeededRng env_rng = rng.substream("env");
  SeededRng explore_rng = rng.substream("explore");
  SeededRng replay_rng = rng.substream("replay");

  Observation probe = env.reset(env_rng);
  const int input = featurize(spec, probe).size;

  MlpParams online =
      make_mlp(input, hyper.hidden, spec.action_count, Activation::ReLU, init_rng);
  MlpParams target = online;
  ReplayBuffer buffer(hyper.replay_capacity);
  Adam optimizer(hyper.learning_rate);
  MetricSeries metrics;

  std::int64_t steps = 0;
  const auto epsilon_at = [&](std::int64_t step) {
    if (step >= hyper.epsilon_decay_steps) return hyper.epsilon_end;
    const double frac = static_cast<double>(step) /
                        static_cast<double>(hyper.epsilon_decay_steps);
    return hyper.epsilon_start + frac * (hyper.epsilon_end - hyper.epsilon_start);
  };

  for (std::int64_t episode = 1; episode <= hyper.total_episodes; ++episode) {
    Observation obs = episode == 1 ? probe : env.reset(env_rng);
    Features feat = featurize(spec, obs);
    double episode_reward = 0.0;
    int episode_length = 0;

    while (true) {
      int action;
      if (explore_rng.next_double() < epsilon_at(steps)) {
        action = static_cast<int>(
            explore_rng.uniform_int(static_cast<std::uint32_t>(spec.action_count)));
      } else {
        const std::vector<double> q = mlp_forward(online, feat);
        action = static_cast<int>(
            std::max_element(q.begin(), q.end()) - q.begin());
      }

      const StepOutcome outcome = env.step(ActionId{action}, env_rng);
      Features next_feat = featurize(spec, outcome.observation);
      buffer.push(Transition{feat, action, outcome.reward, next_feat,
                             outcome.terminated});
      ++steps;
      episode_reward += outcome.reward;
      ++episode_length;

      if (steps % hyper.train_freq == 0 &&
          buffer.size() >= static_cast<std::size_t>(hyper.warmup_steps) &&
          buffer.size() >= static_cast<std::size_t>(hyper.batch_size)) {
        const auto batch = buffer.sample(hyper.batch_size, replay_rng);
        LossGrads lg = dqn_loss(batch, online, target, hyper.gamma);
        if (!std::isfinite(lg.loss)) abort_on_nan("train_dqn", episode, steps, online);
        optimizer.step(online, lg.grads);
      }
      if (steps % hyper.target_sync_interval == 0) target = online;

      feat = std::move(next_feat);
      if (outcome.terminated || outcome.truncated) break;
    }

    metrics.append(MetricRow{static_cast<int>(episode), episode_reward,
                             episode_length, 0, 0});
  }

  BaselineAgent agent;
  agent.kind = "dqn";
  agent.env = spec.id;
  agent.primary = std::move(online);
  return {std::move(agent), std::move(metrics)};
}

}  // namespace parl
