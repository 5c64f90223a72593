#include "parl/envs/frozen_lake.hpp"

#include <sstream>
#include <stdexcept>

#include "parl/errors.hpp"

namespace parl {

int FrozenLakeMap::start_index() const {
  const auto pos = cells.find('S');
  if (pos == std::string::npos) throw ConfigError("frozen lake map has no start cell");
  return static_cast<int>(pos);
}

const FrozenLakeMap& FrozenLakeMap::standard() {
  static const FrozenLakeMap map{4, 4, "SFFF" "FHFH" "FFFH" "HFFG"};
  return map;
}

FrozenLakeMap FrozenLakeMap::from_text(const std::string& text) {
  FrozenLakeMap map;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (map.ncols == 0) {
      map.ncols = static_cast<int>(line.size());
    } else if (static_cast<int>(line.size()) != map.ncols) {
      throw ConfigError("frozen lake map rows have unequal lengths");
    }
    for (char c : line) {
      if (c != 'S' && c != 'F' && c != 'H' && c != 'G')
        throw ConfigError("frozen lake map: unknown cell character");
    }
    map.cells += line;
    ++map.nrows;
  }
  if (map.nrows == 0) throw ConfigError("frozen lake map is empty");
  map.start_index();  // validates presence of S
  if (map.cells.find('G') == std::string::npos)
    throw ConfigError("frozen lake map has no goal cell");
  return map;
}

namespace {

EnvSpec frozenlake_make_spec(int max_steps) {
  return EnvSpec{
      .id = EnvId::FrozenLake,
      .action_count = 4,
      .action_names = {"Left", "Down", "Right", "Up"},
      .reward_set = {{0.0, 1.0}},
      .max_steps = max_steps,
      .observation_kind = ObservationKind::DiscreteIndex,
  };
}

std::pair<int, int> direction_delta(int action) {
  switch (action) {
    case kFlLeft: return {0, -1};
    case kFlDown: return {1, 0};
    case kFlRight: return {0, 1};
    case kFlUp: return {-1, 0};
    default: throw InvalidActionError("frozen lake action must be in 0..3");
  }
}

}  // namespace

ActionId resolve_slip(ActionId intended, SeededRng& rng) {
  if (intended.index < 0 || intended.index >= 4)
    throw InvalidActionError("frozen lake action must be in 0..3");
  const int shift = static_cast<int>(rng.uniform_int(3)) - 1;  // -1, 0, +1
  return ActionId{(intended.index + shift + 4) % 4};
}

std::pair<FrozenLakeState, StepOutcome> frozenlake_step(const FrozenLakeState& state,
                                                        ActionId action,
                                                        SeededRng& rng,
                                                        const FrozenLakeMap& map,
                                                        bool slippery,
                                                        int max_steps) {
  const char here = map.at(state.row, state.col);
  if (here == 'H' || here == 'G')
    throw ProtocolError("frozenlake_step: episode already finished");

  const ActionId executed = slippery ? resolve_slip(action, rng) : action;
  const auto [dr, dc] = direction_delta(executed.index);

  FrozenLakeState next = state;
  const int nr = state.row + dr;
  const int nc = state.col + dc;
  if (nr >= 0 && nr < map.nrows && nc >= 0 && nc < map.ncols) {
    next.row = nr;
    next.col = nc;
  }
  next.steps_taken = state.steps_taken + 1;

  StepOutcome outcome;
  const char cell = map.at(next.row, next.col);
  if (cell == 'H') {
    outcome.terminated = true;
    outcome.reward = 0.0;
  } else if (cell == 'G') {
    outcome.terminated = true;
    outcome.reward = 1.0;
  } else if (next.steps_taken >= max_steps) {
    outcome.truncated = true;
    outcome.reward = 0.0;
  }
  outcome.observation =
      DiscreteIndex{fl_index(next.row, next.col, map.ncols), map.nrows * map.ncols};
  return {next, std::move(outcome)};
}

FrozenLakeEnv::FrozenLakeEnv(bool slippery, int max_steps, FrozenLakeMap map)
    : spec_(frozenlake_make_spec(max_steps)), map_(std::move(map)), slippery_(slippery) {}

Observation FrozenLakeEnv::reset(SeededRng& rng) {
  (void)rng;  // fixed start cell; kept for interface uniformity
  const int start = map_.start_index();
  state_ = {start / map_.ncols, start % map_.ncols, 0};
  done_ = false;
  return DiscreteIndex{start, map_.nrows * map_.ncols};
}

StepOutcome FrozenLakeEnv::step(ActionId action, SeededRng& rng) {
  if (done_) throw ProtocolError("FrozenLakeEnv::step: episode already finished");
  auto [next, outcome] =
      frozenlake_step(state_, action, rng, map_, slippery_, spec_.max_steps);
  state_ = next;
  done_ = outcome.terminated || outcome.truncated;
  return outcome;
}

}  // namespace parl
