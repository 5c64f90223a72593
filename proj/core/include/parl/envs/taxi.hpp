#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "parl/envs/env.hpp"

namespace parl {

// Canonical action ids; prompts use the names Down/Up/Right/Left/Pickup/Drop-off.
constexpr int kTaxiDown = 0;   // south
constexpr int kTaxiUp = 1;     // north
constexpr int kTaxiRight = 2;  // east
constexpr int kTaxiLeft = 3;   // west
constexpr int kTaxiPickup = 4;
constexpr int kTaxiDropoff = 5;

constexpr int kTaxiInTaxi = 4;  // passenger_location value while riding

extern const std::array<const char*, 4> kTaxiLandmarkNames;  // Red Green Yellow Blue

/// ((row*5 + col)*5 + passenger)*4 + destination.
int taxi_encode(int taxi_row, int taxi_col, int passenger_location, int destination);

struct TaxiFields {
  int taxi_row = 0;
  int taxi_col = 0;
  int passenger_location = 0;
  int destination = 0;
};

/// Inverse of taxi_encode; throws std::domain_error outside [0, 500).
TaxiFields taxi_decode(int index);

/// 5x5 grid with east-west wall segments and four landmarks.
struct TaxiMap {
  int nrows = 5;
  int ncols = 5;
  std::vector<bool> wall_east;  // row-major; true if a wall blocks (r,c) <-> (r,c+1)
  std::array<std::pair<int, int>, 4> landmarks;  // Red, Green, Yellow, Blue

  bool blocked_east(int row, int col) const {
    return wall_east[static_cast<std::size_t>(row * ncols + col)];
  }

  static const TaxiMap& standard();
  /// Parses the conventional ASCII layout (border, ':' open, '|' wall,
  /// R/G/Y/B landmark letters).
  static TaxiMap from_text(const std::string& text);
};

struct TaxiState {
  int taxi_row = 0;
  int taxi_col = 0;
  int passenger_location = 0;  // 0..3 landmark, 4 in taxi
  int destination = 0;         // 0..3
  int steps_taken = 0;
};

const EnvSpec& taxi_spec_standard();

/// Movement costs -1 (walls keep the position); pickup at the passenger's
/// landmark boards them (-1), dropoff at the destination with the passenger
/// aboard pays +20 and terminates, dropoff at another landmark sets them
/// down there (-1), and any other pickup/dropoff is illegal (-10).
std::pair<TaxiState, StepOutcome> taxi_step(const TaxiState& state, ActionId action,
                                            const TaxiMap& map, int max_steps);

class TaxiEnv final : public Env {
 public:
  explicit TaxiEnv(int max_steps = 100, TaxiMap map = TaxiMap::standard());
  const EnvSpec& spec() const override { return spec_; }
  Observation reset(SeededRng& rng) override;
  StepOutcome step(ActionId action, SeededRng& rng) override;
  bool done() const override { return done_; }
  const TaxiState& state() const { return state_; }

 private:
  EnvSpec spec_;
  TaxiMap map_;
  TaxiState state_;
  bool done_ = true;
};

}  // namespace parl
