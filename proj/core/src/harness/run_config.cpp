#include "parl/harness/run_config.hpp"

#include <fstream>
#include <sstream>

#include "parl/errors.hpp"
#include "parl/harness/toml_lite.hpp"

namespace parl {

std::string agent_kind_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::Parl: return "parl";
    case AgentKind::Dqn: return "dqn";
    case AgentKind::Ppo: return "ppo";
    case AgentKind::A2c: return "a2c";
    case AgentKind::Random: return "random";
    case AgentKind::Scripted: return "scripted";
  }
  throw ConfigError("agent_kind_name: unknown agent kind");
}

AgentKind agent_kind_from_name(const std::string& name) {
  if (name == "parl") return AgentKind::Parl;
  if (name == "dqn") return AgentKind::Dqn;
  if (name == "ppo") return AgentKind::Ppo;
  if (name == "a2c") return AgentKind::A2c;
  if (name == "random") return AgentKind::Random;
  if (name == "scripted") return AgentKind::Scripted;
  throw ConfigError("unknown agent kind: " + name);
}

namespace {

using toml_lite::Table;
using toml_lite::Value;

const Value* find(const Table& t, const std::string& key) {
  const auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

std::string get_string(const Table& t, const std::string& key, std::string fallback) {
  const Value* v = find(t, key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::String) throw ConfigError("config key " + key + " must be a string");
  return v->string_value;
}

std::int64_t get_int(const Table& t, const std::string& key, std::int64_t fallback) {
  const Value* v = find(t, key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::Integer) throw ConfigError("config key " + key + " must be an integer");
  return v->integer_value;
}

double get_number(const Table& t, const std::string& key, double fallback) {
  const Value* v = find(t, key);
  if (!v) return fallback;
  return v->as_number();
}

bool get_bool(const Table& t, const std::string& key, bool fallback) {
  const Value* v = find(t, key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::Boolean) throw ConfigError("config key " + key + " must be a boolean");
  return v->boolean_value;
}

std::string truncation_name(TruncationPolicy p) {
  return p == TruncationPolicy::FailFast ? "fail-fast" : "drop-oldest";
}

TruncationPolicy truncation_from_name(const std::string& name) {
  if (name == "fail-fast") return TruncationPolicy::FailFast;
  if (name == "drop-oldest") return TruncationPolicy::DropOldestEpisodes;
  throw ConfigError("unknown truncation policy: " + name);
}

std::string inference_history_name(InferenceHistory h) {
  return h == InferenceHistory::TrainedPlusCurrent ? "trained+current" : "current-only";
}

InferenceHistory inference_history_from_name(const std::string& name) {
  if (name == "trained+current") return InferenceHistory::TrainedPlusCurrent;
  if (name == "current-only") return InferenceHistory::CurrentOnly;
  throw ConfigError("unknown inference history setting: " + name);
}

}  // namespace

RunConfig run_config_from_toml(const std::string& text) {
  const Table t = toml_lite::parse(text);
  RunConfig c;

  c.env = env_from_name(get_string(t, "run.env", "frozenlake"));
  c.agent = agent_kind_from_name(get_string(t, "run.agent", "parl"));
  if (const Value* seeds = find(t, "run.seeds")) {
    if (seeds->kind != Value::Kind::Array)
      throw ConfigError("run.seeds must be an array");
    c.seeds.clear();
    for (const auto& s : seeds->array_value)
      c.seeds.push_back(static_cast<std::uint64_t>(s.integer_value));
  }
  if (c.seeds.empty()) throw ConfigError("run.seeds must not be empty");
  c.out_dir = get_string(t, "run.out_dir", c.out_dir.string());
  c.backend = get_string(t, "run.backend", c.backend);
  c.eval_episodes = static_cast<int>(get_int(t, "run.eval_episodes", c.eval_episodes));
  c.scripted_policy_path = get_string(t, "run.scripted_policy", "");

  c.env_options.slippery = get_bool(t, "env.slippery", c.env_options.slippery);
  c.env_options.max_steps =
      static_cast<int>(get_int(t, "env.max_steps", c.env_options.max_steps));
  const std::string map_file = get_string(t, "env.map_file", "");
  if (!map_file.empty()) c.env_options.map_file = map_file;

  auto& p = c.parl;
  p.episodes = static_cast<int>(get_int(t, "parl.episodes", p.episodes));
  p.decode_mode = decode_mode_from_name(
      get_string(t, "parl.decode", decode_mode_name(p.decode_mode)));
  p.history_mode = history_mode_from_name(
      get_string(t, "parl.history", history_mode_name(p.history_mode)));
  p.max_parse_retries =
      static_cast<int>(get_int(t, "parl.max_parse_retries", p.max_parse_retries));
  p.truncation_policy = truncation_from_name(
      get_string(t, "parl.truncation", truncation_name(p.truncation_policy)));
  p.token_budget = static_cast<std::size_t>(
      get_int(t, "parl.token_budget", static_cast<std::int64_t>(p.token_budget)));
  p.omit_zero_rewards = get_bool(t, "parl.omit_zero_rewards", p.omit_zero_rewards);
  p.include_usable_ace = get_bool(t, "parl.include_usable_ace", p.include_usable_ace);
  p.inference_history = inference_history_from_name(get_string(
      t, "parl.inference_history", inference_history_name(p.inference_history)));
  p.model = get_string(t, "parl.model", p.model);
  p.temperature = get_number(t, "parl.temperature", p.temperature);
  p.max_tokens = static_cast<int>(get_int(t, "parl.max_tokens", p.max_tokens));
  p.single_user_message =
      get_bool(t, "parl.single_user_message", p.single_user_message);

  auto& h = c.train;
  h.gamma = get_number(t, "train.gamma", h.gamma);
  h.learning_rate = get_number(t, "train.learning_rate", h.learning_rate);
  h.epsilon_start = get_number(t, "train.epsilon_start", h.epsilon_start);
  h.epsilon_end = get_number(t, "train.epsilon_end", h.epsilon_end);
  h.epsilon_decay_steps = get_int(t, "train.epsilon_decay_steps", h.epsilon_decay_steps);
  h.clip_epsilon = get_number(t, "train.clip_epsilon", h.clip_epsilon);
  h.batch_size = static_cast<int>(get_int(t, "train.batch_size", h.batch_size));
  h.target_sync_interval =
      static_cast<int>(get_int(t, "train.target_sync_interval", h.target_sync_interval));
  h.total_episodes = get_int(t, "train.total_episodes", h.total_episodes);
  h.entropy_coef = get_number(t, "train.entropy_coef", h.entropy_coef);
  h.value_coef = get_number(t, "train.value_coef", h.value_coef);
  h.replay_capacity =
      static_cast<int>(get_int(t, "train.replay_capacity", h.replay_capacity));
  h.train_freq = static_cast<int>(get_int(t, "train.train_freq", h.train_freq));
  h.warmup_steps = static_cast<int>(get_int(t, "train.warmup_steps", h.warmup_steps));
  h.ppo_rollout_steps =
      static_cast<int>(get_int(t, "train.ppo_rollout_steps", h.ppo_rollout_steps));
  h.ppo_epochs = static_cast<int>(get_int(t, "train.ppo_epochs", h.ppo_epochs));
  h.a2c_nstep = static_cast<int>(get_int(t, "train.a2c_nstep", h.a2c_nstep));
  h.a2c_nstep_returns = get_bool(t, "train.a2c_nstep_returns", h.a2c_nstep_returns);
  if (const Value* hidden = find(t, "train.hidden")) {
    if (hidden->kind != Value::Kind::Array)
      throw ConfigError("train.hidden must be an array");
    h.hidden.clear();
    for (const auto& w : hidden->array_value)
      h.hidden.push_back(static_cast<int>(w.integer_value));
  }

  if (p.episodes < 1) throw ConfigError("parl.episodes must be >= 1");
  if (!(h.gamma >= 0.0 && h.gamma <= 1.0))
    throw ConfigError("train.gamma must lie in [0, 1]");
  if (!(h.clip_epsilon > 0.0 && h.clip_epsilon < 1.0))
    throw ConfigError("train.clip_epsilon must lie in (0, 1)");
  return c;
}

std::string run_config_to_toml(const RunConfig& c) {
  Table t;
  t["run.env"] = Value::of(env_name(c.env));
  t["run.agent"] = Value::of(agent_kind_name(c.agent));
  std::vector<Value> seeds;
  for (auto s : c.seeds) seeds.push_back(Value::of(static_cast<std::int64_t>(s)));
  t["run.seeds"] = Value::array(std::move(seeds));
  t["run.out_dir"] = Value::of(c.out_dir.string());
  t["run.backend"] = Value::of(c.backend);
  t["run.eval_episodes"] = Value::of(static_cast<std::int64_t>(c.eval_episodes));
  if (!c.scripted_policy_path.empty())
    t["run.scripted_policy"] = Value::of(c.scripted_policy_path);

  t["env.slippery"] = Value::of(c.env_options.slippery);
  t["env.max_steps"] = Value::of(static_cast<std::int64_t>(c.env_options.max_steps));
  if (c.env_options.map_file) t["env.map_file"] = Value::of(*c.env_options.map_file);

  const auto& p = c.parl;
  t["parl.episodes"] = Value::of(static_cast<std::int64_t>(p.episodes));
  t["parl.decode"] = Value::of(decode_mode_name(p.decode_mode));
  t["parl.history"] = Value::of(history_mode_name(p.history_mode));
  t["parl.max_parse_retries"] = Value::of(static_cast<std::int64_t>(p.max_parse_retries));
  t["parl.truncation"] = Value::of(truncation_name(p.truncation_policy));
  t["parl.token_budget"] = Value::of(static_cast<std::int64_t>(p.token_budget));
  t["parl.omit_zero_rewards"] = Value::of(p.omit_zero_rewards);
  t["parl.include_usable_ace"] = Value::of(p.include_usable_ace);
  t["parl.inference_history"] = Value::of(inference_history_name(p.inference_history));
  t["parl.model"] = Value::of(p.model);
  t["parl.temperature"] = Value::of(p.temperature);
  t["parl.max_tokens"] = Value::of(static_cast<std::int64_t>(p.max_tokens));
  t["parl.single_user_message"] = Value::of(p.single_user_message);

  const auto& h = c.train;
  t["train.gamma"] = Value::of(h.gamma);
  t["train.learning_rate"] = Value::of(h.learning_rate);
  t["train.epsilon_start"] = Value::of(h.epsilon_start);
  t["train.epsilon_end"] = Value::of(h.epsilon_end);
  t["train.epsilon_decay_steps"] = Value::of(h.epsilon_decay_steps);
  t["train.clip_epsilon"] = Value::of(h.clip_epsilon);
  t["train.batch_size"] = Value::of(static_cast<std::int64_t>(h.batch_size));
  t["train.target_sync_interval"] =
      Value::of(static_cast<std::int64_t>(h.target_sync_interval));
  t["train.total_episodes"] = Value::of(h.total_episodes);
  t["train.entropy_coef"] = Value::of(h.entropy_coef);
  t["train.value_coef"] = Value::of(h.value_coef);
  t["train.replay_capacity"] = Value::of(static_cast<std::int64_t>(h.replay_capacity));
  t["train.train_freq"] = Value::of(static_cast<std::int64_t>(h.train_freq));
  t["train.warmup_steps"] = Value::of(static_cast<std::int64_t>(h.warmup_steps));
  t["train.ppo_rollout_steps"] =
      Value::of(static_cast<std::int64_t>(h.ppo_rollout_steps));
  t["train.ppo_epochs"] = Value::of(static_cast<std::int64_t>(h.ppo_epochs));
  t["train.a2c_nstep"] = Value::of(static_cast<std::int64_t>(h.a2c_nstep));
  t["train.a2c_nstep_returns"] = Value::of(h.a2c_nstep_returns);
  std::vector<Value> hidden;
  for (int w : h.hidden) hidden.push_back(Value::of(static_cast<std::int64_t>(w)));
  t["train.hidden"] = Value::array(std::move(hidden));

  return toml_lite::serialize(t);
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_config_from_toml(buf.str());
}

}  // namespace parl
