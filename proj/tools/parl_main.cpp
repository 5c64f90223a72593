// Command-line front end: train / eval / plot subcommands over the
// experiment harness. Exit codes: 0 success, 2 configuration error,
// 1 anything else; errors print as one structured JSON line on stderr.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "parl/errors.hpp"
#include "parl/harness/experiment.hpp"
#include "parl/harness/svg_chart.hpp"

namespace {

using namespace parl;

struct TrainCli {
  std::string config_path;
  std::string env;
  std::string agent;
  std::string history;
  std::string decode;
  int episodes = -1;
  std::vector<std::uint64_t> seeds;
  std::string backend;
  std::string out;
  int eval_episodes = -1;
  bool no_slippery = false;
};

RunConfig resolve_train_config(const TrainCli& cli) {
  RunConfig config;
  if (!cli.config_path.empty()) config = load_run_config(cli.config_path);
  if (!cli.env.empty()) config.env = env_from_name(cli.env);
  if (!cli.agent.empty()) config.agent = agent_kind_from_name(cli.agent);
  if (!cli.history.empty())
    config.parl.history_mode = history_mode_from_name(cli.history);
  if (!cli.decode.empty()) config.parl.decode_mode = decode_mode_from_name(cli.decode);
  if (cli.episodes > 0) {
    config.parl.episodes = cli.episodes;
    config.train.total_episodes = cli.episodes;
  }
  if (!cli.seeds.empty()) config.seeds = cli.seeds;
  if (!cli.backend.empty()) config.backend = cli.backend;
  if (!cli.out.empty()) config.out_dir = cli.out;
  if (cli.eval_episodes > 0) config.eval_episodes = cli.eval_episodes;
  if (cli.no_slippery) config.env_options.slippery = false;
  return config;
}

int run_train(const TrainCli& cli) {
  run_experiment(resolve_train_config(cli));
  return 0;
}

int run_eval(const std::string& artifact, int episodes, const std::string& backend,
             std::uint64_t seed, bool no_slippery) {
  RunConfig config;
  config.eval_episodes = episodes;
  config.seeds = {seed};
  if (!backend.empty()) config.backend = backend;
  if (no_slippery) config.env_options.slippery = false;
  const EvalReport report = evaluate(config, artifact);
  std::cout << to_json(report) << '\n';
  return 0;
}

int run_plot(const std::string& csv_path, int window, const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot read CSV: " + csv_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const MetricSeries series = metric_series_from_csv(buf.str());

  SvgChartOptions options;
  options.title = csv_path;
  options.footer = "trailing moving average, window = " + std::to_string(window);
  write_svg_chart(svg_path, smooth(series.rewards(), window), options);
  std::cout << "wrote " << svg_path << '\n';
  return 0;
}

void print_error(const char* kind, const std::exception& e) {
  std::cerr << nlohmann::json{{"error", e.what()}, {"kind", kind}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RL experiment workbench: prompt-based LLM agents and "
               "from-scratch DQN/PPO/A2C baselines on toy-text tasks"};
  app.require_subcommand(1);

  TrainCli train_cli;
  auto* train = app.add_subcommand("train", "Train an agent and evaluate it");
  train->add_option("--config", train_cli.config_path, "TOML run config");
  train->add_option("--env", train_cli.env, "blackjack|frozenlake|taxi");
  train->add_option("--agent", train_cli.agent, "parl|dqn|ppo|a2c|random|scripted");
  train->add_option("--history", train_cli.history, "full|random-rewards|none");
  train->add_option("--decode", train_cli.decode, "self|script");
  train->add_option("--episodes", train_cli.episodes, "training episode budget");
  train->add_option("--seed", train_cli.seeds, "seed (repeatable)");
  train->add_option("--backend", train_cli.backend, "http|mock:<path>|replay:<path>");
  train->add_option("--out", train_cli.out, "output directory");
  train->add_option("--eval-episodes", train_cli.eval_episodes,
                    "evaluation episode count");
  train->add_flag("--no-slippery", train_cli.no_slippery,
                  "disable FrozenLake slippery dynamics");

  std::string artifact;
  int eval_episodes = 100;
  std::string eval_backend;
  std::uint64_t eval_seed = 1;
  bool eval_no_slippery = false;
  auto* eval = app.add_subcommand("eval", "Evaluate a trained artifact");
  eval->add_option("--artifact", artifact, "policy.json or params.json")->required();
  eval->add_option("--episodes", eval_episodes, "evaluation episode count");
  eval->add_option("--backend", eval_backend, "LLM backend for prompt policies");
  eval->add_option("--seed", eval_seed, "evaluation seed");
  eval->add_flag("--no-slippery", eval_no_slippery,
                 "disable FrozenLake slippery dynamics");

  std::string csv_path;
  int window = 5;
  std::string svg_path;
  auto* plot = app.add_subcommand("plot", "Render a smoothed learning curve");
  plot->add_option("--csv", csv_path, "training metrics CSV")->required();
  plot->add_option("--window", window, "smoothing window");
  plot->add_option("--svg", svg_path, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return run_train(train_cli);
    if (eval->parsed())
      return run_eval(artifact, eval_episodes, eval_backend, eval_seed,
                      eval_no_slippery);
    if (plot->parsed()) return run_plot(csv_path, window, svg_path);
  } catch (const ConfigError& e) {
    print_error("config", e);
    return 2;
  } catch (const std::exception& e) {
    print_error("runtime", e);
    return 1;
  }
  return 0;
}
