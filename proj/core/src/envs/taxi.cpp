#include "parl/envs/taxi.hpp"

#include <sstream>
#include <stdexcept>

#include "parl/errors.hpp"

namespace parl {

const std::array<const char*, 4> kTaxiLandmarkNames = {"Red", "Green", "Yellow",
                                                       "Blue"};

int taxi_encode(int taxi_row, int taxi_col, int passenger_location,
                int destination) {
  return ((taxi_row * 5 + taxi_col) * 5 + passenger_location) * 4 + destination;
}

TaxiFields taxi_decode(int index) {
  if (index < 0 || index >= 500)
    throw std::domain_error("taxi_decode: index must lie in [0, 500)");
  TaxiFields f;
  f.destination = index % 4;
  index /= 4;
  f.passenger_location = index % 5;
  index /= 5;
  f.taxi_col = index % 5;
  f.taxi_row = index / 5;
  return f;
}

namespace {

constexpr const char* kStandardTaxiLayout =
    "+---------+\n"
    "|R: | : :G|\n"
    "| : | : : |\n"
    "| : : : : |\n"
    "| | : | : |\n"
    "|Y| : |B: |\n"
    "+---------+\n";

}  // namespace

const TaxiMap& TaxiMap::standard() {
  static const TaxiMap map = TaxiMap::from_text(kStandardTaxiLayout);
  return map;
}

TaxiMap TaxiMap::from_text(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() < 3) throw ConfigError("taxi map: too few rows");

  TaxiMap map;
  map.nrows = static_cast<int>(lines.size()) - 2;
  map.ncols = (static_cast<int>(lines[1].size()) - 1) / 2;
  map.wall_east.assign(static_cast<std::size_t>(map.nrows * map.ncols), false);

  std::array<bool, 4> seen{};
  for (int r = 0; r < map.nrows; ++r) {
    const std::string& row = lines[static_cast<std::size_t>(r + 1)];
    for (int c = 0; c < map.ncols; ++c) {
      const char cell = row[static_cast<std::size_t>(2 * c + 1)];
      const auto mark = [&](int which) {
        map.landmarks[static_cast<std::size_t>(which)] = {r, c};
        seen[static_cast<std::size_t>(which)] = true;
      };
      if (cell == 'R') mark(0);
      else if (cell == 'G') mark(1);
      else if (cell == 'Y') mark(2);
      else if (cell == 'B') mark(3);
      if (c + 1 < map.ncols) {
        const char sep = row[static_cast<std::size_t>(2 * c + 2)];
        map.wall_east[static_cast<std::size_t>(r * map.ncols + c)] = (sep == '|');
      }
    }
  }
  for (bool s : seen)
    if (!s) throw ConfigError("taxi map: missing a landmark letter (R/G/Y/B)");
  return map;
}

const EnvSpec& taxi_spec_standard() {
  static const EnvSpec spec{
      .id = EnvId::Taxi,
      .action_count = 6,
      .action_names = {"Down", "Up", "Right", "Left", "Pickup", "Drop-off"},
      .reward_set = {{-1.0, -10.0, 20.0}},
      .max_steps = 100,
      .observation_kind = ObservationKind::DiscreteIndex,
  };
  return spec;
}

std::pair<TaxiState, StepOutcome> taxi_step(const TaxiState& state, ActionId action,
                                            const TaxiMap& map, int max_steps) {
  if (action.index < 0 || action.index > 5)
    throw InvalidActionError("taxi action must be in 0..5");

  TaxiState next = state;
  StepOutcome outcome;
  outcome.reward = -1.0;

  const std::pair<int, int> here{state.taxi_row, state.taxi_col};
  switch (action.index) {
    case kTaxiDown:
      if (state.taxi_row + 1 < map.nrows) next.taxi_row = state.taxi_row + 1;
      break;
    case kTaxiUp:
      if (state.taxi_row > 0) next.taxi_row = state.taxi_row - 1;
      break;
    case kTaxiRight:
      if (state.taxi_col + 1 < map.ncols && !map.blocked_east(state.taxi_row, state.taxi_col))
        next.taxi_col = state.taxi_col + 1;
      break;
    case kTaxiLeft:
      if (state.taxi_col > 0 && !map.blocked_east(state.taxi_row, state.taxi_col - 1))
        next.taxi_col = state.taxi_col - 1;
      break;
    case kTaxiPickup:
      if (state.passenger_location < kTaxiInTaxi &&
          map.landmarks[static_cast<std::size_t>(state.passenger_location)] == here) {
        next.passenger_location = kTaxiInTaxi;
      } else {
        outcome.reward = -10.0;
      }
      break;
    case kTaxiDropoff:
      if (state.passenger_location == kTaxiInTaxi &&
          map.landmarks[static_cast<std::size_t>(state.destination)] == here) {
        next.passenger_location = state.destination;
        outcome.reward = 20.0;
        outcome.terminated = true;
      } else if (state.passenger_location == kTaxiInTaxi) {
        // Setting the passenger down at a wrong landmark is allowed; anywhere
        // else the attempt is illegal.
        bool at_landmark = false;
        for (std::size_t i = 0; i < map.landmarks.size(); ++i) {
          if (map.landmarks[i] == here) {
            next.passenger_location = static_cast<int>(i);
            at_landmark = true;
            break;
          }
        }
        if (!at_landmark) outcome.reward = -10.0;
      } else {
        outcome.reward = -10.0;
      }
      break;
    default:
      break;
  }

  next.steps_taken = state.steps_taken + 1;
  if (!outcome.terminated && next.steps_taken >= max_steps) outcome.truncated = true;
  outcome.observation = DiscreteIndex{
      taxi_encode(next.taxi_row, next.taxi_col, next.passenger_location,
                  next.destination),
      500};
  return {next, std::move(outcome)};
}

TaxiEnv::TaxiEnv(int max_steps, TaxiMap map)
    : spec_(taxi_spec_standard()), map_(std::move(map)) {
  spec_.max_steps = max_steps;
}

Observation TaxiEnv::reset(SeededRng& rng) {
  state_.taxi_row = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(map_.nrows)));
  state_.taxi_col = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(map_.ncols)));
  do {
    state_.passenger_location = static_cast<int>(rng.uniform_int(4));
    state_.destination = static_cast<int>(rng.uniform_int(4));
  } while (state_.passenger_location == state_.destination);
  state_.steps_taken = 0;
  done_ = false;
  return DiscreteIndex{taxi_encode(state_.taxi_row, state_.taxi_col,
                                   state_.passenger_location, state_.destination),
                       500};
}

StepOutcome TaxiEnv::step(ActionId action, SeededRng& rng) {
  (void)rng;  // taxi dynamics are deterministic
  if (done_) throw ProtocolError("TaxiEnv::step: episode already finished");
  auto [next, outcome] = taxi_step(state_, action, map_, spec_.max_steps);
  state_ = next;
  done_ = outcome.terminated || outcome.truncated;
  return outcome;
}

}  // namespace parl
