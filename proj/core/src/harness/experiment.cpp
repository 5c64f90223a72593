#include "parl/harness/experiment.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "parl/baselines/a2c.hpp"
#include "parl/baselines/dqn.hpp"
#include "parl/baselines/ppo.hpp"
#include "parl/errors.hpp"
#include "parl/harness/svg_chart.hpp"

namespace parl {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

void write_training_chart(const std::filesystem::path& path, const MetricSeries& series,
                          const std::string& title, int window) {
  const std::vector<double> rewards = series.rewards();
  SvgChartOptions options;
  options.title = title;
  options.y_label = "reward";
  options.footer = "trailing moving average, window = " + std::to_string(window);
  write_svg_chart(path, smooth(rewards, window), options);
}

/// Per-seed artifacts live in out_dir/seed-<S>/.
void run_one_seed(const RunConfig& config, std::uint64_t seed) {
  const std::filesystem::path dir =
      config.out_dir / ("seed-" + std::to_string(seed));
  std::filesystem::create_directories(dir);

  RunConfig snapshot = config;
  snapshot.seeds = {seed};
  snapshot.parl.seed = seed;
  write_file(dir / "config.toml", run_config_to_toml(snapshot));

  auto env = make_env(config.env, config.env_options);
  write_file(dir / "env_spec.json", to_json(env->spec()));

  const std::string name =
      env_name(config.env) + " / " + agent_kind_name(config.agent);

  switch (config.agent) {
    case AgentKind::Parl: {
      ParlConfig parl = config.parl;
      parl.seed = seed;
      auto backend = make_backend(config.backend);
      TrainResult train =
          run_training(*env, *backend, parl, dir / "transcript.jsonl");
      write_file(dir / "training_metrics.csv", to_csv(train.metrics));
      write_training_chart(dir / "training_rewards.svg", train.metrics, name, 5);

      PolicyArtifact artifact;
      artifact.env = config.env;
      artifact.decode_mode = parl.decode_mode;
      artifact.include_usable_ace = parl.include_usable_ace;
      artifact.task = task_description(env->spec());
      artifact.buffer = train.history;
      write_file(dir / "policy.json", to_json(artifact));

      auto eval_env = make_env(config.env, config.env_options);
      InferenceResult inference =
          run_inference(*eval_env, *backend, train.history, config.eval_episodes,
                        parl, dir / "transcript.jsonl");
      write_file(dir / "eval_metrics.csv", to_csv(inference.metrics));
      write_file(dir / "eval_report.json", to_json(inference.report));
      break;
    }
    case AgentKind::Dqn:
    case AgentKind::Ppo:
    case AgentKind::A2c: {
      SeededRng rng(seed);
      std::pair<BaselineAgent, MetricSeries> trained = [&] {
        switch (config.agent) {
          case AgentKind::Dqn: return train_dqn(*env, config.train, rng);
          case AgentKind::Ppo: return train_ppo(*env, config.train, rng);
          default: return train_a2c(*env, config.train, rng);
        }
      }();
      write_file(dir / "training_metrics.csv", to_csv(trained.second));
      write_training_chart(dir / "training_rewards.svg", trained.second, name, 200);
      write_file(dir / "params.json", to_json(trained.first));

      auto eval_env = make_env(config.env, config.env_options);
      BaselinePolicy policy(trained.first, eval_env->spec());
      MetricSeries eval_series;
      SeededRng eval_rng(seed);
      const EvalReport report =
          policy_eval(policy, *eval_env, config.eval_episodes, eval_rng, &eval_series);
      write_file(dir / "eval_metrics.csv", to_csv(eval_series));
      write_file(dir / "eval_report.json", to_json(report));
      break;
    }
    case AgentKind::Random:
    case AgentKind::Scripted: {
      std::unique_ptr<Policy> policy;
      if (config.agent == AgentKind::Random) {
        policy = std::make_unique<RandomPolicy>(env->spec().action_count);
      } else {
        if (config.scripted_policy_path.empty())
          throw ConfigError("scripted agent requires run.scripted_policy");
        policy = std::make_unique<ScriptedPolicy>(
            ScriptedPolicy::from_json_file(config.scripted_policy_path));
      }
      MetricSeries eval_series;
      SeededRng eval_rng(seed);
      const EvalReport report =
          policy_eval(*policy, *env, config.eval_episodes, eval_rng, &eval_series);
      write_file(dir / "eval_metrics.csv", to_csv(eval_series));
      write_file(dir / "eval_report.json", to_json(report));
      break;
    }
  }
}

}  // namespace

void run_experiment(const RunConfig& config) {
  if (config.seeds.empty()) throw ConfigError("run.seeds must not be empty");
  std::filesystem::create_directories(config.out_dir);

  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(config.seeds.size(), hardware);

  if (workers <= 1) {
    for (std::uint64_t seed : config.seeds) run_one_seed(config, seed);
    return;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(config.seeds.size());
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= config.seeds.size()) return;
        try {
          run_one_seed(config, config.seeds[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

EvalReport evaluate(const RunConfig& config, const std::filesystem::path& artifact) {
  std::ifstream in(artifact);
  if (!in) throw ConfigError("cannot read artifact: " + artifact.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  // The artifact decides the agent family and env; a config that names a
  // different family is a mismatch.
  const bool is_prompt_policy = text.find("\"prompt-policy\"") != std::string::npos;
  const bool config_names_baseline = config.agent == AgentKind::Dqn ||
                                     config.agent == AgentKind::Ppo ||
                                     config.agent == AgentKind::A2c;
  if (is_prompt_policy) {
    if (config_names_baseline)
      throw ProtocolError("artifact is a prompt policy but the config selects " +
                          agent_kind_name(config.agent));
    const PolicyArtifact policy = policy_artifact_from_json(text);
    auto env = make_env(policy.env, config.env_options);
    auto backend = make_backend(config.backend);
    ParlConfig parl = config.parl;
    parl.decode_mode = policy.decode_mode;
    parl.include_usable_ace = policy.include_usable_ace;
    parl.seed = config.seeds.front();
    return run_inference(*env, *backend, policy.buffer, config.eval_episodes, parl)
        .report;
  }

  const BaselineAgent agent = baseline_agent_from_json(text);
  if (config_names_baseline && agent.kind != agent_kind_name(config.agent))
    throw ProtocolError("artifact agent kind '" + agent.kind +
                        "' does not match the configured agent");
  auto env = make_env(agent.env, config.env_options);
  BaselinePolicy policy(agent, env->spec());
  SeededRng rng(config.seeds.front());
  return policy_eval(policy, *env, config.eval_episodes, rng);
}

}  // namespace parl
