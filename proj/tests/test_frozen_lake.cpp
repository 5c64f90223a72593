#include "parl/envs/frozen_lake.hpp"

#include <gtest/gtest.h>

#include "parl/errors.hpp"
#include "test_util.hpp"

using namespace parl;

TEST(FlIndex, RowMajorFormula) {
  EXPECT_EQ(fl_index(1, 2, 4), 6);
  EXPECT_EQ(fl_index(0, 0, 4), 0);
  EXPECT_EQ(fl_index(3, 3, 4), 15);
}

TEST(FrozenLakeMap, StandardLayout) {
  const auto& map = FrozenLakeMap::standard();
  EXPECT_EQ(map.nrows, 4);
  EXPECT_EQ(map.ncols, 4);
  EXPECT_EQ(map.cells, "SFFFFHFHFFFHHFFG");
  EXPECT_EQ(map.start_index(), 0);
}

TEST(FrozenLakeMap, FromTextValidates) {
  const auto map = FrozenLakeMap::from_text("SFF\nFHF\nFFG\n");
  EXPECT_EQ(map.nrows, 3);
  EXPECT_EQ(map.ncols, 3);
  EXPECT_THROW(FrozenLakeMap::from_text("SFX\nFFG\n"), ConfigError);
  EXPECT_THROW(FrozenLakeMap::from_text("SF\nFFG\n"), ConfigError);
  EXPECT_THROW(FrozenLakeMap::from_text("FFF\nFFG\n"), ConfigError);  // no start
}

TEST(FrozenLakeStep, DeterministicWhenNotSlippery) {
  const auto& map = FrozenLakeMap::standard();
  SeededRng rng(1);
  FrozenLakeState state{1, 2, 0};  // index 6
  auto [next, outcome] = frozenlake_step(state, ActionId{kFlDown}, rng, map,
                                         /*slippery=*/false, 100);
  EXPECT_EQ(fl_index(next.row, next.col, 4), 10);
  EXPECT_FALSE(outcome.terminated);
  EXPECT_DOUBLE_EQ(outcome.reward, 0.0);
}

TEST(FrozenLakeStep, HoleTerminatesWithZero) {
  const auto& map = FrozenLakeMap::standard();
  SeededRng rng(1);
  FrozenLakeState state{1, 2, 0};  // index 6; left neighbor 5 is a hole
  auto [next, outcome] =
      frozenlake_step(state, ActionId{kFlLeft}, rng, map, false, 100);
  EXPECT_EQ(fl_index(next.row, next.col, 4), 5);
  EXPECT_TRUE(outcome.terminated);
  EXPECT_FALSE(outcome.truncated);
  EXPECT_DOUBLE_EQ(outcome.reward, 0.0);
}

TEST(FrozenLakeStep, GoalPaysOne) {
  const auto& map = FrozenLakeMap::standard();
  SeededRng rng(1);
  FrozenLakeState state{3, 2, 0};  // left of the goal
  auto [next, outcome] =
      frozenlake_step(state, ActionId{kFlRight}, rng, map, false, 100);
  EXPECT_EQ(fl_index(next.row, next.col, 4), 15);
  EXPECT_TRUE(outcome.terminated);
  EXPECT_DOUBLE_EQ(outcome.reward, 1.0);
}

TEST(FrozenLakeStep, OffGridMoveKeepsPosition) {
  const auto& map = FrozenLakeMap::standard();
  SeededRng rng(1);
  FrozenLakeState state{0, 0, 0};
  auto [next, outcome] = frozenlake_step(state, ActionId{kFlUp}, rng, map, false, 100);
  EXPECT_EQ(next.row, 0);
  EXPECT_EQ(next.col, 0);
  EXPECT_FALSE(outcome.terminated);
}

TEST(FrozenLakeStep, StepCapTruncates) {
  const auto& map = FrozenLakeMap::standard();
  SeededRng rng(1);
  FrozenLakeState state{0, 0, 99};
  auto [next, outcome] = frozenlake_step(state, ActionId{kFlUp}, rng, map, false, 100);
  EXPECT_TRUE(outcome.truncated);
  EXPECT_FALSE(outcome.terminated);
}

TEST(FrozenLakeStep, InvalidActionThrows) {
  const auto& map = FrozenLakeMap::standard();
  SeededRng rng(1);
  FrozenLakeState state{0, 0, 0};
  EXPECT_THROW(frozenlake_step(state, ActionId{4}, rng, map, true, 100),
               InvalidActionError);
  EXPECT_THROW(frozenlake_step(state, ActionId{-1}, rng, map, true, 100),
               InvalidActionError);
}

TEST(FrozenLakeStep, SteppingFromHoleOrGoalIsAProtocolError) {
  const auto& map = FrozenLakeMap::standard();
  SeededRng rng(1);
  FrozenLakeState hole{1, 1, 3};
  EXPECT_THROW(frozenlake_step(hole, ActionId{0}, rng, map, true, 100), ProtocolError);
  FrozenLakeState goal{3, 3, 3};
  EXPECT_THROW(frozenlake_step(goal, ActionId{0}, rng, map, true, 100), ProtocolError);
}

// Monte Carlo over the slip sampler: intended direction and both
// perpendiculars each appear 1/3 of the time.
TEST(ResolveSlip, FrequenciesAreOneThirdEach) {
  SeededRng rng(777);
  constexpr int kTrials = 100000;
  const ActionId intended{kFlDown};
  int counts[4] = {};
  for (int i = 0; i < kTrials; ++i) ++counts[resolve_slip(intended, rng).index];
  EXPECT_EQ(counts[kFlUp], 0);  // never the opposite direction
  for (int dir : {kFlLeft, kFlDown, kFlRight}) {
    EXPECT_NEAR(static_cast<double>(counts[dir]) / kTrials, 1.0 / 3.0, 0.02);
  }
}

TEST(FrozenLakeEnv, ShortestSuccessfulPathIsSixMoves) {
  // BFS oracle on the standard map, then walk its policy without slip.
  const auto bfs = oracles::bfs_shortest_path(FrozenLakeMap::standard());
  ASSERT_TRUE(bfs.has_value());
  EXPECT_EQ(bfs->path_length, 6);

  FrozenLakeEnv env(/*slippery=*/false);
  SeededRng rng(9);
  Observation obs = env.reset(rng);
  int steps = 0;
  double last_reward = 0.0;
  while (!env.done()) {
    const int state = std::get<DiscreteIndex>(obs).value;
    const StepOutcome out = env.step(ActionId{bfs->action_by_state.at(state)}, rng);
    obs = out.observation;
    last_reward = out.reward;
    ++steps;
  }
  EXPECT_EQ(steps, 6);
  EXPECT_DOUBLE_EQ(last_reward, 1.0);
}

TEST(FrozenLakeEnv, RewardsAlwaysInRewardSet) {
  FrozenLakeEnv env;
  SeededRng rng(55);
  SeededRng actions(56);
  for (int episode = 0; episode < 200; ++episode) {
    env.reset(rng);
    while (!env.done()) {
      const StepOutcome out =
          env.step(ActionId{static_cast<int>(actions.uniform_int(4))}, rng);
      EXPECT_TRUE(env.spec().reward_set.contains(out.reward));
    }
  }
}
