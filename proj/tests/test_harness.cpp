#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "parl/envs/blackjack.hpp"
#include "parl/errors.hpp"
#include "parl/harness/experiment.hpp"
#include "parl/harness/metrics.hpp"
#include "parl/harness/svg_chart.hpp"
#include "parl/harness/toml_lite.hpp"
#include "test_util.hpp"

using namespace parl;

TEST(Smooth, TrailingWindowCases) {
  const std::vector<double> s{1, 2, 3, 4};
  const std::vector<double> expected{1, 1.5, 2.5, 3.5};
  EXPECT_EQ(smooth(s, 2), expected);
  EXPECT_EQ(smooth(s, 1), s);

  const std::vector<double> constant(10, 4.25);
  for (int window : {1, 3, 7, 20}) {
    for (double v : smooth(constant, window)) EXPECT_DOUBLE_EQ(v, 4.25);
  }
  EXPECT_TRUE(smooth(std::vector<double>{}, 5).empty());
  EXPECT_THROW(smooth(s, 0), std::domain_error);
}

TEST(Smooth, NeverChangesLength) {
  SeededRng rng(4);
  for (int n : {1, 5, 100, 1000}) {
    std::vector<double> series;
    for (int i = 0; i < n; ++i) series.push_back(rng.next_double());
    for (int window : {1, 5, 200}) {
      EXPECT_EQ(smooth(series, window).size(), series.size());
    }
  }
}

TEST(MetricCsv, HeaderAndRoundTrip) {
  MetricSeries series;
  series.append({1, 1.0, 6, 0, 120});
  series.append({2, -0.5, 3, 2, 150});
  const std::string csv = to_csv(series);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "episode,true_reward,length,fallback_count,prompt_tokens_estimate");

  const MetricSeries restored = metric_series_from_csv(csv);
  ASSERT_EQ(restored.rows.size(), 2u);
  EXPECT_EQ(restored.rows[1].episode, 2);
  EXPECT_DOUBLE_EQ(restored.rows[1].true_reward, -0.5);
  EXPECT_EQ(restored.rows[1].fallback_count, 2);
  EXPECT_EQ(to_csv(restored), csv);
}

TEST(EvalReportTest, SummaryAndJsonRoundTrip) {
  const std::vector<double> rewards{1, 1, 0, 0};
  const std::vector<double> lengths{6, 6, 6, 6};
  const EvalReport report = summarize(rewards, lengths);
  EXPECT_DOUBLE_EQ(report.mean_reward, 0.5);
  EXPECT_DOUBLE_EQ(report.std_reward, 0.5);
  EXPECT_DOUBLE_EQ(report.mean_length, 6.0);
  EXPECT_DOUBLE_EQ(report.std_length, 0.0);
  EXPECT_EQ(report.episodes, 4);

  const EvalReport restored = eval_report_from_json(to_json(report));
  EXPECT_DOUBLE_EQ(restored.mean_reward, report.mean_reward);
  EXPECT_EQ(restored.episodes, report.episodes);
}

TEST(SvgChart, ContainsPolylineAxesAndFooter) {
  const std::vector<double> values{0.1, 0.5, 0.3, 0.9};
  SvgChartOptions options;
  options.title = "demo";
  options.footer = "trailing moving average, window = 5";
  const std::string svg = svg_line_chart(values, options);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("demo"), std::string::npos);
  EXPECT_NE(svg.find("window = 5"), std::string::npos);
  EXPECT_NE(svg.find("episode"), std::string::npos);
}

TEST(TomlLite, ParsesScalarsArraysAndSections) {
  const std::string text = R"(
# comment
title = "hello # not a comment"
count = 42
ratio = 0.5
flag = true

[section]
items = [1, 2, 3]
names = ["a", "b"]
)";
  const auto table = toml_lite::parse(text);
  EXPECT_EQ(table.at("title").string_value, "hello # not a comment");
  EXPECT_EQ(table.at("count").integer_value, 42);
  EXPECT_DOUBLE_EQ(table.at("ratio").float_value, 0.5);
  EXPECT_TRUE(table.at("flag").boolean_value);
  ASSERT_EQ(table.at("section.items").array_value.size(), 3u);
  EXPECT_EQ(table.at("section.items").array_value[2].integer_value, 3);
  EXPECT_EQ(table.at("section.names").array_value[1].string_value, "b");
}

TEST(TomlLite, SerializeParseRoundTrip) {
  toml_lite::Table table;
  table["top"] = toml_lite::Value::of(std::int64_t{7});
  table["a.x"] = toml_lite::Value::of(std::string("s"));
  table["a.y"] = toml_lite::Value::of(true);
  table["b.z"] = toml_lite::Value::of(2.5);
  table["b.arr"] = toml_lite::Value::array(
      {toml_lite::Value::of(std::int64_t{1}), toml_lite::Value::of(std::int64_t{2})});

  const auto reparsed = toml_lite::parse(toml_lite::serialize(table));
  EXPECT_EQ(reparsed.at("top").integer_value, 7);
  EXPECT_EQ(reparsed.at("a.x").string_value, "s");
  EXPECT_TRUE(reparsed.at("a.y").boolean_value);
  EXPECT_DOUBLE_EQ(reparsed.at("b.z").float_value, 2.5);
  EXPECT_EQ(reparsed.at("b.arr").array_value.size(), 2u);
}

TEST(TomlLite, RejectsMalformedInput) {
  EXPECT_THROW(toml_lite::parse("key"), ConfigError);
  EXPECT_THROW(toml_lite::parse("[unterminated"), ConfigError);
  EXPECT_THROW(toml_lite::parse("x = \"open"), ConfigError);
  EXPECT_THROW(toml_lite::parse("x = zzz"), ConfigError);
}

TEST(RunConfigToml, RoundTripPreservesEveryField) {
  RunConfig config;
  config.env = EnvId::Taxi;
  config.agent = AgentKind::Ppo;
  config.seeds = {3, 5, 8};
  config.out_dir = "runs/demo";
  config.backend = "mock:table.json";
  config.eval_episodes = 50;
  config.env_options.slippery = false;
  config.env_options.max_steps = 42;
  config.parl.episodes = 17;
  config.parl.decode_mode = DecodeMode::RawSelf;
  config.parl.history_mode = HistoryMode::RandomRewards;
  config.parl.omit_zero_rewards = true;
  config.train.gamma = 0.95;
  config.train.hidden = {32, 16};
  config.train.total_episodes = 1234;

  const RunConfig restored = run_config_from_toml(run_config_to_toml(config));
  EXPECT_EQ(restored.env, EnvId::Taxi);
  EXPECT_EQ(restored.agent, AgentKind::Ppo);
  EXPECT_EQ(restored.seeds, config.seeds);
  EXPECT_EQ(restored.backend, "mock:table.json");
  EXPECT_EQ(restored.eval_episodes, 50);
  EXPECT_FALSE(restored.env_options.slippery);
  EXPECT_EQ(restored.env_options.max_steps, 42);
  EXPECT_EQ(restored.parl.episodes, 17);
  EXPECT_EQ(restored.parl.decode_mode, DecodeMode::RawSelf);
  EXPECT_EQ(restored.parl.history_mode, HistoryMode::RandomRewards);
  EXPECT_TRUE(restored.parl.omit_zero_rewards);
  EXPECT_DOUBLE_EQ(restored.train.gamma, 0.95);
  EXPECT_EQ(restored.train.hidden, (std::vector<int>{32, 16}));
  EXPECT_EQ(restored.train.total_episodes, 1234);
}

TEST(RunConfigToml, Validation) {
  EXPECT_THROW(run_config_from_toml("[run]\nenv = \"pacman\"\n"), ConfigError);
  EXPECT_THROW(run_config_from_toml("[run]\nseeds = []\n"), ConfigError);
  EXPECT_THROW(run_config_from_toml("[train]\ngamma = 1.5\n"), ConfigError);
}

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  EXPECT_TRUE(in) << "missing " << path;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Scripted-mock PARL config on the non-slippery lake.
RunConfig parl_experiment_config(const std::filesystem::path& dir,
                                 const std::filesystem::path& mock_path) {
  {
    std::ofstream out(mock_path);
    out << R"({"type":"policy-table","entries":{)"
        << R"("row 0, column 0":"Down","row 1, column 0":"Down",)"
        << R"("row 2, column 0":"Right","row 2, column 1":"Down",)"
        << R"("row 3, column 1":"Right","row 3, column 2":"Right"}})";
  }
  RunConfig config;
  config.env = EnvId::FrozenLake;
  config.agent = AgentKind::Parl;
  config.seeds = {1};
  config.out_dir = dir;
  config.backend = "mock:" + mock_path.string();
  config.eval_episodes = 3;
  config.env_options.slippery = false;
  config.parl.episodes = 2;
  config.parl.decode_mode = DecodeMode::Script;
  config.parl.history_mode = HistoryMode::FullHistory;
  return config;
}

}  // namespace

TEST(Experiment, ParlRunWritesAllArtifactsDeterministically) {
  const auto dir = fresh_dir("parl_experiment_test");
  const auto mock = std::filesystem::temp_directory_path() / "parl_exp_mock.json";
  const RunConfig config = parl_experiment_config(dir, mock);

  run_experiment(config);
  const auto seed_dir = dir / "seed-1";
  for (const char* artifact :
       {"config.toml", "env_spec.json", "training_metrics.csv", "policy.json",
        "training_rewards.svg", "eval_metrics.csv", "eval_report.json",
        "transcript.jsonl"}) {
    EXPECT_TRUE(std::filesystem::exists(seed_dir / artifact)) << artifact;
  }

  const std::string first_csv = slurp(seed_dir / "training_metrics.csv");
  const EvalReport report =
      eval_report_from_json(slurp(seed_dir / "eval_report.json"));
  EXPECT_DOUBLE_EQ(report.mean_reward, 1.0);
  EXPECT_DOUBLE_EQ(report.mean_length, 6.0);

  // Config snapshot suffices to re-run the experiment bit-identically.
  const RunConfig snapshot = load_run_config(seed_dir / "config.toml");
  const auto dir2 = fresh_dir("parl_experiment_test_rerun");
  RunConfig rerun = snapshot;
  rerun.out_dir = dir2;
  run_experiment(rerun);
  EXPECT_EQ(slurp(dir2 / "seed-1" / "training_metrics.csv"), first_csv);
  EXPECT_EQ(slurp(dir2 / "seed-1" / "eval_metrics.csv"),
            slurp(seed_dir / "eval_metrics.csv"));

  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
  std::filesystem::remove(mock);
}

TEST(Experiment, TrainingCsvRowCountMatchesEpisodeBudget) {
  const auto dir = fresh_dir("parl_experiment_rowcount");
  RunConfig config;
  config.env = EnvId::FrozenLake;
  config.agent = AgentKind::Dqn;
  config.seeds = {4};
  config.out_dir = dir;
  config.eval_episodes = 5;
  config.train.total_episodes = 120;
  config.train.epsilon_decay_steps = 500;
  config.train.warmup_steps = 64;
  config.train.hidden = {16};
  run_experiment(config);

  const MetricSeries series =
      metric_series_from_csv(slurp(dir / "seed-4" / "training_metrics.csv"));
  ASSERT_EQ(series.rows.size(), 120u);
  for (std::size_t i = 0; i < series.rows.size(); ++i)
    EXPECT_EQ(series.rows[i].episode, static_cast<int>(i + 1));
  EXPECT_TRUE(std::filesystem::exists(dir / "seed-4" / "params.json"));

  // evaluate() reloads the artifact and reproduces a greedy evaluation.
  RunConfig eval_config;
  eval_config.agent = AgentKind::Dqn;
  eval_config.seeds = {4};
  eval_config.eval_episodes = 5;
  const EvalReport report = evaluate(eval_config, dir / "seed-4" / "params.json");
  EXPECT_EQ(report.episodes, 5);
  std::filesystem::remove_all(dir);
}

TEST(Experiment, RandomAgentOnBlackjackMatchesMonteCarloBand) {
  // Monte Carlo oracle: uniform-random blackjack play loses 25-45% on
  // average. 10k episodes keep the estimate tight.
  const auto dir = fresh_dir("parl_experiment_random");
  RunConfig config;
  config.env = EnvId::Blackjack;
  config.agent = AgentKind::Random;
  config.seeds = {11};
  config.out_dir = dir;
  config.eval_episodes = 10000;
  run_experiment(config);
  const EvalReport report =
      eval_report_from_json(slurp(dir / "seed-11" / "eval_report.json"));
  EXPECT_GE(report.mean_reward, -0.45);
  EXPECT_LE(report.mean_reward, -0.25);
  std::filesystem::remove_all(dir);
}

TEST(Experiment, UnknownBackendSelectorIsConfigError) {
  RunConfig config;
  config.agent = AgentKind::Parl;
  config.backend = "carrier-pigeon";
  config.out_dir = fresh_dir("parl_experiment_bad");
  EXPECT_THROW(run_experiment(config), ConfigError);
  std::filesystem::remove_all(config.out_dir);
}
