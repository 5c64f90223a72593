#pragma once

#include <cstddef>
#include <string>

#include "parl/agent/history.hpp"
#include "parl/rng.hpp"

namespace parl {

/// What to do when the rendered prompt would exceed the token budget.
enum class TruncationPolicy { FailFast, DropOldestEpisodes };

/// "Action (taken): Stick; (new) State: [10, 6, 6], [7]; Reward: 0".
/// The reward clause is omitted when the record carries no reward.
std::string format_step(const StepRecord& record);

/// Integral rewards print without a decimal point ("Reward: 0", not "0.0").
std::string format_reward(double value);

struct PromptBudget {
  std::size_t token_budget = 120000;
  TruncationPolicy policy = TruncationPolicy::DropOldestEpisodes;
};

struct BuiltPrompt {
  std::string text;       // task_text + "\n\n" + body_text
  std::string task_text;  // the four preamble lines
  std::string body_text;  // rendered episodes + action request
  int dropped_episodes = 0;  // rendered history trimmed to fit the budget
  long token_estimate = 0;
};

/// Assembles the policy prompt: task description, rendered history per the
/// buffer's mode, the episode in progress (whose last log line carries the
/// current state), and a closing action request. Under FullHistory and
/// RandomRewards every completed episode is rendered before the current one;
/// under NoHistory only the current episode appears.
///
/// `current_state_text` must match the buffer's view of the present state;
/// it seeds the current episode block at step 0.
BuiltPrompt build_prompt(const TaskDescription& task, const HistoryBuffer& history,
                         const std::string& current_state_text,
                         const PromptBudget& budget = {});

/// Closing instruction appended to every prompt.
extern const char* const kActionRequest;

/// Maps an LLM reply to an action id. Matching precedence: exact action
/// name (case-insensitive, ignoring surrounding punctuation), then a bare
/// action index, then the earliest action name appearing as a word in the
/// reply. Throws ParseError when nothing matches.
ActionId parse_action(const std::string& reply, const EnvSpec& env);

/// Uniform draw from the reward set, independent of the true reward.
double randomize_reward(double true_reward, const RewardSet& rewards, SeededRng& rng);

}  // namespace parl
