#include "parl/baselines/a2c.hpp"

#include <cmath>
#include <stdexcept>

#include "parl/baselines/adam.hpp"

namespace parl {

ActorCriticGrads a2c_loss(std::span<const A2cSample> batch, const MlpParams& actor,
                          const MlpParams& critic, double value_coef,
                          double entropy_coef) {
  if (batch.empty()) throw std::domain_error("a2c_loss: empty batch");

  ActorCriticGrads result;
  result.policy_grads = zeros_like(actor);
  result.value_grads = zeros_like(critic);
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  ForwardCache actor_cache;
  ForwardCache critic_cache;
  for (const A2cSample& sample : batch) {
    const std::vector<double> logits = mlp_forward(actor, sample.state, &actor_cache);
    const std::vector<double> probs = softmax(logits);
    const std::size_t a = static_cast<std::size_t>(sample.action);
    const double log_prob = std::log(probs[a] + 1e-300);

    double entropy = 0.0;
    for (double p : probs) {
      if (p > 0.0) entropy -= p * std::log(p);
    }

    const std::vector<double> v = mlp_forward(critic, sample.state, &critic_cache);
    const double value_err = v[0] - sample.value_target;

    result.loss += (-log_prob * sample.advantage + value_coef * value_err * value_err -
                    entropy_coef * entropy) *
                   inv_n;

    std::vector<double> grad_logits(probs.size());
    for (std::size_t k = 0; k < probs.size(); ++k) {
      const double dlp = (k == a ? 1.0 : 0.0) - probs[k];
      const double dent = -probs[k] * (std::log(probs[k] + 1e-300) + entropy);
      grad_logits[k] =
          (-sample.advantage * dlp - entropy_coef * dent) * inv_n;
    }
    mlp_backward_into(actor, actor_cache, grad_logits, result.policy_grads);

    const std::vector<double> grad_value{2.0 * value_coef * value_err * inv_n};
    mlp_backward_into(critic, critic_cache, grad_value, result.value_grads);
  }
  return result;
}

std::pair<BaselineAgent, MetricSeries> train_a2c(Env& env, const TrainHyper& hyper,
                                                 SeededRng& rng) {
  const EnvSpec& spec = env.spec();
  SeededRng init_rng = rng.substream("init");
  SeededRng env_rng = rng.substream("env");
  SeededRng explore_rng = rng.substream("explore");

  Observation obs = env.reset(env_rng);
  const int input = featurize(spec, obs).size;

  MlpParams actor =
      make_mlp(input, hyper.hidden, spec.action_count, Activation::ReLU, init_rng);
  MlpParams critic = make_mlp(input, hyper.hidden, 1, Activation::ReLU, init_rng);
  Adam actor_opt(hyper.learning_rate);
  Adam critic_opt(hyper.learning_rate);

  MetricSeries metrics;
  std::int64_t episodes_done = 0;
  double episode_reward = 0.0;
  int episode_length = 0;
  bool need_reset = false;

  struct CollectedStep {
    Features state;
    int action;
    double reward;
    Features next_state;
    bool terminal;
  };
  std::vector<CollectedStep> span_steps;
  span_steps.reserve(static_cast<std::size_t>(hyper.a2c_nstep));

  const auto flush_update = [&]() {
    if (span_steps.empty()) return;
    std::vector<A2cSample> samples;
    samples.reserve(span_steps.size());

    if (hyper.a2c_nstep_returns) {
      // n-step returns: bootstrap once from the tail state.
      const auto& tail = span_steps.back();
      double bootstrap =
          tail.terminal ? 0.0 : mlp_forward(critic, tail.next_state)[0];
      double running = bootstrap;
      std::vector<double> targets(span_steps.size());
      for (std::size_t i = span_steps.size(); i-- > 0;) {
        running = span_steps[i].reward +
                  (span_steps[i].terminal ? 0.0 : hyper.gamma * running);
        targets[i] = running;
        if (span_steps[i].terminal) running = 0.0;  // reset across episode ends
      }
      for (std::size_t i = 0; i < span_steps.size(); ++i) {
        A2cSample s;
        s.state = span_steps[i].state;
        s.action = span_steps[i].action;
        s.value_target = targets[i];
        s.advantage = targets[i] - mlp_forward(critic, span_steps[i].state)[0];
        samples.push_back(std::move(s));
      }
    } else {
      for (const auto& step : span_steps) {
        A2cSample s;
        s.state = step.state;
        s.action = step.action;
        const double v_s = mlp_forward(critic, step.state)[0];
        const double v_next =
            step.terminal ? 0.0 : mlp_forward(critic, step.next_state)[0];
        s.value_target = step.terminal ? step.reward : step.reward + hyper.gamma * v_next;
        s.advantage = a2c_advantage(step.reward, hyper.gamma, v_next, v_s, step.terminal);
        samples.push_back(std::move(s));
      }
    }

    ActorCriticGrads lg =
        a2c_loss(samples, actor, critic, hyper.value_coef, hyper.entropy_coef);
    if (!std::isfinite(lg.loss))
      throw std::runtime_error("train_a2c: loss is not finite after " +
                               std::to_string(episodes_done) + " episodes");
    actor_opt.step(actor, lg.policy_grads);
    critic_opt.step(critic, lg.value_grads);
    span_steps.clear();
  };

  while (episodes_done < hyper.total_episodes) {
    if (need_reset) {
      obs = env.reset(env_rng);
      need_reset = false;
    }
    CollectedStep step;
    step.state = featurize(spec, obs);
    const std::vector<double> probs = softmax(mlp_forward(actor, step.state));
    const double u = explore_rng.next_double();
    double cumulative = 0.0;
    step.action = static_cast<int>(probs.size()) - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      cumulative += probs[i];
      if (u < cumulative) {
        step.action = static_cast<int>(i);
        break;
      }
    }

    const StepOutcome outcome = env.step(ActionId{step.action}, env_rng);
    step.reward = outcome.reward;
    step.next_state = featurize(spec, outcome.observation);
    step.terminal = outcome.terminated;
    span_steps.push_back(std::move(step));

    episode_reward += outcome.reward;
    ++episode_length;
    obs = outcome.observation;

    const bool episode_over = outcome.terminated || outcome.truncated;
    if (episode_over) {
      ++episodes_done;
      metrics.append(MetricRow{static_cast<int>(episodes_done), episode_reward,
                               episode_length, 0, 0});
      episode_reward = 0.0;
      episode_length = 0;
      need_reset = true;
    }
    if (static_cast<int>(span_steps.size()) >= hyper.a2c_nstep || episode_over)
      flush_update();
  }

  BaselineAgent agent;
  agent.kind = "a2c";
  agent.env = spec.id;
  agent.primary = std::move(actor);
  agent.value = std::move(critic);
  return {std::move(agent), std::move(metrics)};
}

}  // namespace parl
