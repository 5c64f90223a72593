#include "parl/agent/prompt.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "parl/errors.hpp"
#include "parl/harness/metrics.hpp"

namespace parl {

const char* const kActionRequest =
    "Choose the next action. Reply with exactly one action from the action list.";

std::string format_reward(double value) {
  if (std::isfinite(value) && value == std::floor(value) &&
      std::abs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  std::ostringstream out;
  out << value;
  return out.str();
}

namespace {

// State text may or may not carry the "State: " prefix depending on the
// decode mode; the log line supplies it exactly once.
std::string strip_state_prefix(const std::string& text) {
  constexpr std::string_view prefix = "State: ";
  if (text.rfind(prefix, 0) == 0) return text.substr(prefix.size());
  return text;
}

std::string state_line(const std::string& text) {
  return "State: " + strip_state_prefix(text);
}

}  // namespace

std::string format_step(const StepRecord& record) {
  std::string line = "Action (taken): " + record.action_name +
                     "; (new) State: " + strip_state_prefix(record.new_state_text);
  if (record.reward) line += "; Reward: " + format_reward(*record.reward);
  return line;
}

namespace {

std::string render_episode(const EpisodeLog& episode, int episode_number) {
  std::string out = "Episode " + std::to_string(episode_number) + ":\n" +
                    state_line(episode.initial_state_text);
  for (const auto& record : episode.records) out += '\n' + format_step(record);
  return out;
}

// Episode blocks separated by blank lines; appending a step or an episode
// extends the previous rendering, which keeps training prompts monotone.
std::string render_episodes(const HistoryBuffer& history, int skip_oldest) {
  std::string out;
  const auto add_block = [&](const std::string& block) {
    if (!out.empty()) out += "\n\n";
    out += block;
  };
  int number = 1;
  if (history.mode != HistoryMode::NoHistory) {
    const int total = static_cast<int>(history.completed_episodes.size());
    for (int i = skip_oldest; i < total; ++i) {
      add_block(render_episode(history.completed_episodes[static_cast<std::size_t>(i)],
                               i + 1));
    }
    number = total + 1;
  }
  if (history.episode_open) add_block(render_episode(history.current_episode, number));
  return out;
}

}  // namespace

BuiltPrompt build_prompt(const TaskDescription& task, const HistoryBuffer& history,
                         const std::string& current_state_text,
                         const PromptBudget& budget) {
  if (history.episode_open &&
      strip_state_prefix(history.current_state_text()) !=
          strip_state_prefix(current_state_text)) {
    throw ProtocolError(
        "build_prompt: current_state_text disagrees with the history buffer");
  }

  BuiltPrompt prompt;
  prompt.task_text = task.goal_text + "\nActions: " + task.actions_text + '\n' +
                     task.state_schema_text + "\nRewards: " + task.rewards_text;

  const auto assemble = [&](int skip_oldest) {
    const std::string episodes = render_episodes(history, skip_oldest);
    prompt.body_text = episodes.empty() ? std::string(kActionRequest)
                                        : episodes + "\n\n" + kActionRequest;
    prompt.text = prompt.task_text + "\n\n" + prompt.body_text;
    prompt.token_estimate = estimate_tokens(prompt.text.size());
  };

  assemble(0);
  if (static_cast<std::size_t>(prompt.token_estimate) <= budget.token_budget)
    return prompt;

  if (budget.policy == TruncationPolicy::FailFast)
    throw TruncationError("prompt exceeds the token budget (" +
                          std::to_string(prompt.token_estimate) + " > " +
                          std::to_string(budget.token_budget) + " tokens)");

  const int droppable = static_cast<int>(history.completed_episodes.size());
  for (int skip = 1; skip <= droppable; ++skip) {
    assemble(skip);
    if (static_cast<std::size_t>(prompt.token_estimate) <= budget.token_budget) {
      prompt.dropped_episodes = skip;
      return prompt;
    }
  }
  throw TruncationError(
      "prompt exceeds the token budget even after dropping all completed episodes");
}

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Trim whitespace, then surrounding quotes and sentence punctuation.
std::string normalize_reply(const std::string& reply) {
  std::size_t begin = 0;
  std::size_t end = reply.size();
  const auto trimmable = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\'' ||
           c == '.' || c == '!' || c == ':' || c == '`';
  };
  while (begin < end && trimmable(reply[begin])) ++begin;
  while (end > begin && trimmable(reply[end - 1])) --end;
  return reply.substr(begin, end - begin);
}

// Hyphenated names ("Drop-off") also match their spaced and fused spellings.
std::vector<std::string> name_variants(const std::string& name) {
  std::vector<std::string> variants{lowercase(name)};
  if (name.find('-') != std::string::npos) {
    std::string spaced = variants[0];
    std::string fused;
    for (char& c : spaced) {
      if (c == '-') c = ' ';
    }
    for (char c : variants[0]) {
      if (c != '-') fused += c;
    }
    variants.push_back(spaced);
    variants.push_back(fused);
  }
  return variants;
}

std::size_t find_word(const std::string& haystack, const std::string& needle) {
  std::size_t from = 0;
  while (true) {
    const auto pos = haystack.find(needle, from);
    if (pos == std::string::npos) return std::string::npos;
    const bool left_ok = pos == 0 || !word_char(haystack[pos - 1]);
    const std::size_t after = pos + needle.size();
    const bool right_ok = after >= haystack.size() || !word_char(haystack[after]);
    if (left_ok && right_ok) return pos;
    from = pos + 1;
  }
}

}  // namespace

ActionId parse_action(const std::string& reply, const EnvSpec& env) {
  const std::string normalized = lowercase(normalize_reply(reply));

  // (1) Exact action name.
  for (int a = 0; a < env.action_count; ++a) {
    for (const auto& variant :
         name_variants(env.action_names[static_cast<std::size_t>(a)])) {
      if (normalized == variant) return ActionId{a};
    }
  }

  // (2) Bare action index.
  if (!normalized.empty() &&
      normalized.find_first_not_of("0123456789") == std::string::npos) {
    try {
      const int index = std::stoi(normalized);
      if (index >= 0 && index < env.action_count) return ActionId{index};
    } catch (const std::out_of_range&) {
      // falls through to word search
    }
  }

  // (3) Earliest action name appearing as a word.
  const std::string haystack = lowercase(reply);
  std::size_t best_pos = std::string::npos;
  int best_action = -1;
  for (int a = 0; a < env.action_count; ++a) {
    for (const auto& variant :
         name_variants(env.action_names[static_cast<std::size_t>(a)])) {
      const auto pos = find_word(haystack, variant);
      if (pos != std::string::npos && pos < best_pos) {
        best_pos = pos;
        best_action = a;
      }
    }
  }
  if (best_action >= 0) return ActionId{best_action};

  throw ParseError("no action recognized in reply: " + reply);
}

double randomize_reward(double /*true_reward*/, const RewardSet& rewards,
                        SeededRng& rng) {
  if (rewards.values.empty())
    throw std::domain_error("randomize_reward: empty reward set");
  const auto i = rng.uniform_int(static_cast<std::uint32_t>(rewards.values.size()));
  return rewards.values[i];
}

}  // namespace parl
