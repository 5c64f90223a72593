#include "parl/baselines/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parl/baselines/a2c.hpp"
#include "parl/baselines/adam.hpp"

namespace parl {

double ppo_objective(double ratio, double advantage, double clip_epsilon) {
  const double clipped =
      std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon) * advantage;
  return std::min(ratio * advantage, clipped);
}

ActorCriticGrads ppo_loss(std::span<const PpoSample> batch, const MlpParams& policy,
                          const MlpParams& value, double clip_epsilon,
                          double value_coef, double entropy_coef) {
  if (batch.empty()) throw std::domain_error("ppo_loss: empty batch");

  ActorCriticGrads result;
  result.policy_grads = zeros_like(policy);
  result.value_grads = zeros_like(value);
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  ForwardCache policy_cache;
  ForwardCache value_cache;
  for (const PpoSample& sample : batch) {
    const std::vector<double> logits = mlp_forward(policy, sample.state, &policy_cache);
    const std::vector<double> probs = softmax(logits);
    const std::size_t a = static_cast<std::size_t>(sample.action);
    const double log_prob = std::log(probs[a] + 1e-300);
    const double ratio = std::exp(log_prob - sample.old_log_prob);

    const double surrogate = ppo_objective(ratio, sample.advantage, clip_epsilon);
    double entropy = 0.0;
    for (double p : probs) {
      if (p > 0.0) entropy -= p * std::log(p);
    }

    const std::vector<double> v = mlp_forward(value, sample.state, &value_cache);
    const double value_err = v[0] - sample.value_target;

    result.loss += (-surrogate + value_coef * value_err * value_err -
                    entropy_coef * entropy) *
                   inv_n;

    // d(-surrogate)/d log_prob: -ratio*A on the unclipped branch, 0 where the
    // clip is saturated and selected by the min.
    const double clipped =
        std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon) * sample.advantage;
    const double dsurr_dlp = (ratio * sample.advantage <= clipped)
                                 ? ratio * sample.advantage
                                 : 0.0;

    std::vector<double> grad_logits(probs.size());
    for (std::size_t k = 0; k < probs.size(); ++k) {
      // d log_prob(a) / d logit_k = 1{k==a} - p_k
      const double dlp = (k == a ? 1.0 : 0.0) - probs[k];
      // d entropy / d logit_k = -p_k (log p_k + entropy)
      const double dent = -probs[k] * (std::log(probs[k] + 1e-300) + entropy);
      grad_logits[k] = (-dsurr_dlp * dlp - entropy_coef * dent) * inv_n;
    }
    mlp_backward_into(policy, policy_cache, grad_logits, result.policy_grads);

    const std::vector<double> grad_value{2.0 * value_coef * value_err * inv_n};
    mlp_backward_into(value, value_cache, grad_value, result.value_grads);
  }
  return result;
}

namespace {

int sample_categorical(const std::vector<double>& probs, SeededRng& rng) {
  const double u = rng.next_double();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

struct RolloutStep {
  Features state;
  int action = 0;
  double old_log_prob = 0.0;
  double reward = 0.0;
  Features next_state;
  bool terminal = false;
};

}  // namespace

std::pair<BaselineAgent, MetricSeries> train_ppo(Env& env, const TrainHyper& hyper,
                                                 SeededRng& rng) {
  const EnvSpec& spec = env.spec();
  SeededRng init_rng = rng.substream("init");
  SeededRng env_rng = rng.substream("env");
  SeededRng explore_rng = rng.substream("explore");
  SeededRng batch_rng = rng.substream("batch");

  Observation obs = env.reset(env_rng);
  const int input = featurize(spec, obs).size;

  MlpParams policy =
      make_mlp(input, hyper.hidden, spec.action_count, Activation::ReLU, init_rng);
  MlpParams value = make_mlp(input, hyper.hidden, 1, Activation::ReLU, init_rng);
  Adam policy_opt(hyper.learning_rate);
  Adam value_opt(hyper.learning_rate);

  MetricSeries metrics;
  std::int64_t episodes_done = 0;
  double episode_reward = 0.0;
  int episode_length = 0;
  bool need_reset = false;

  std::vector<RolloutStep> rollout;
  rollout.reserve(static_cast<std::size_t>(hyper.ppo_rollout_steps));

  while (episodes_done < hyper.total_episodes) {
    rollout.clear();
    for (int i = 0; i < hyper.ppo_rollout_steps && episodes_done < hyper.total_episodes;
         ++i) {
      if (need_reset) {
        obs = env.reset(env_rng);
        need_reset = false;
      }
      RolloutStep step;
      step.state = featurize(spec, obs);
      const std::vector<double> probs = softmax(mlp_forward(policy, step.state));
      step.action = sample_categorical(probs, explore_rng);
      step.old_log_prob = std::log(probs[static_cast<std::size_t>(step.action)] + 1e-300);

      const StepOutcome outcome = env.step(ActionId{step.action}, env_rng);
      step.reward = outcome.reward;
      step.next_state = featurize(spec, outcome.observation);
      step.terminal = outcome.terminated;
      rollout.push_back(std::move(step));

      episode_reward += outcome.reward;
      ++episode_length;
      obs = outcome.observation;
      if (outcome.terminated || outcome.truncated) {
        ++episodes_done;
        metrics.append(MetricRow{static_cast<int>(episodes_done), episode_reward,
                                 episode_length, 0, 0});
        episode_reward = 0.0;
        episode_length = 0;
        need_reset = true;
      }
    }
    if (rollout.empty()) break;

    // One-step advantages and value targets from the current critic.
    std::vector<PpoSample> samples;
    samples.reserve(rollout.size());
    for (const auto& step : rollout) {
      PpoSample s;
      s.state = step.state;
      s.action = step.action;
      s.old_log_prob = step.old_log_prob;
      const double v_s = mlp_forward(value, step.state)[0];
      const double v_next = step.terminal ? 0.0 : mlp_forward(value, step.next_state)[0];
      s.value_target = step.terminal ? step.reward : step.reward + hyper.gamma * v_next;
      s.advantage = a2c_advantage(step.reward, hyper.gamma, v_next, v_s, step.terminal);
      samples.push_back(std::move(s));
    }

    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < hyper.ppo_epochs; ++epoch) {
      // Fisher-Yates with the seeded stream.
      for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = batch_rng.uniform_int(static_cast<std::uint32_t>(i));
        std::swap(order[i - 1], order[j]);
      }
      for (std::size_t start = 0; start < order.size();
           start += static_cast<std::size_t>(hyper.batch_size)) {
        const std::size_t stop =
            std::min(order.size(), start + static_cast<std::size_t>(hyper.batch_size));
        std::vector<PpoSample> minibatch;
        minibatch.reserve(stop - start);
        for (std::size_t i = start; i < stop; ++i)
          minibatch.push_back(samples[order[i]]);

        ActorCriticGrads lg = ppo_loss(minibatch, policy, value, hyper.clip_epsilon,
                                       hyper.value_coef, hyper.entropy_coef);
        if (!std::isfinite(lg.loss))
          throw std::runtime_error("train_ppo: loss is not finite after " +
                                   std::to_string(episodes_done) + " episodes");
        policy_opt.step(policy, lg.policy_grads);
        value_opt.step(value, lg.value_grads);
      }
    }
  }

  BaselineAgent agent;
  agent.kind = "ppo";
  agent.env = spec.id;
  agent.primary = std::move(policy);
  agent.value = std::move(value);
  return {std::move(agent), std::move(metrics)};
}

}  // namespace parl
