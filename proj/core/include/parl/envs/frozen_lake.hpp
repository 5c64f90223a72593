#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parl/envs/env.hpp"

namespace parl {

/// Row-major index of a grid cell.
inline int fl_index(int row, int col, int ncols) { return row * ncols + col; }

// Direction ids follow the conventional encoding.
constexpr int kFlLeft = 0;
constexpr int kFlDown = 1;
constexpr int kFlRight = 2;
constexpr int kFlUp = 3;

/// Grid of S (start), F (frozen), H (hole), G (goal) cells.
struct FrozenLakeMap {
  int nrows = 0;
  int ncols = 0;
  std::string cells;  // row-major

  char at(int row, int col) const { return cells[static_cast<std::size_t>(fl_index(row, col, ncols))]; }
  int start_index() const;

  /// The conventional 4x4 layout: SFFF / FHFH / FFFH / HFFG.
  static const FrozenLakeMap& standard();
  /// One row per line; validates characters and rectangularity.
  static FrozenLakeMap from_text(const std::string& text);
};

struct FrozenLakeState {
  int row = 0;
  int col = 0;
  int steps_taken = 0;
};

/// Slippery movement: the intended direction and each perpendicular one are
/// executed with probability 1/3 each. Exposed so tests can count outcomes.
ActionId resolve_slip(ActionId intended, SeededRng& rng);

/// Moves one cell (off-grid moves keep the position). Entering a hole ends
/// the episode with reward 0; the goal ends it with +1; hitting the step cap
/// truncates.
std::pair<FrozenLakeState, StepOutcome> frozenlake_step(const FrozenLakeState& state,
                                                        ActionId action,
                                                        SeededRng& rng,
                                                        const FrozenLakeMap& map,
                                                        bool slippery,
                                                        int max_steps);

class FrozenLakeEnv final : public Env {
 public:
  explicit FrozenLakeEnv(bool slippery = true, int max_steps = 100,
                         FrozenLakeMap map = FrozenLakeMap::standard());
  const EnvSpec& spec() const override { return spec_; }
  Observation reset(SeededRng& rng) override;
  StepOutcome step(ActionId action, SeededRng& rng) override;
  bool done() const override { return done_; }
  const FrozenLakeMap& map() const { return map_; }
  const FrozenLakeState& state() const { return state_; }
  bool slippery() const { return slippery_; }

 private:
  EnvSpec spec_;
  FrozenLakeMap map_;
  bool slippery_;
  FrozenLakeState state_;
  bool done_ = true;
};

}  // namespace parl
