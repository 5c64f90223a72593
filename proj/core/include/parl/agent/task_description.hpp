#pragma once

#include <string>

#include "parl/envs/env.hpp"

namespace parl {

/// The four prompt preamble texts: goal, action list, observation schema,
/// reward list. Frozen per environment; golden tests pin the wording.
struct TaskDescription {
  std::string goal_text;
  std::string actions_text;
  std::string state_schema_text;
  std::string rewards_text;
  bool operator==(const TaskDescription&) const = default;
};

TaskDescription task_description(const EnvSpec& env);

}  // namespace parl
