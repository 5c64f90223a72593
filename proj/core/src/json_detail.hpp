#pragma once

// Internal: nlohmann encodings shared between core translation units.
// Public headers expose string-based serialization only.

#include <json.hpp>

#include "parl/types.hpp"

namespace parl::detail {

nlohmann::json observation_json(const Observation& obs);
Observation observation_from_value(const nlohmann::json& j);
nlohmann::json episode_json(const EpisodeLog& log);
EpisodeLog episode_from_value(const nlohmann::json& j);

}  // namespace parl::detail
