#include "parl/agent/task_description.hpp"

#include "parl/errors.hpp"

namespace parl {

TaskDescription task_description(const EnvSpec& env) {
  switch (env.id) {
    case EnvId::Blackjack:
      return {
          "Blackjack is a card game where the goal is to get as close to 21 as "
          "possible without exceeding it.",
          "0: Stick (Stop), 1: Hit (Draw)",
          "The observation is a tuple: (player's value, dealer's value).",
          "+1: Win, -1: Lose, 0: Draw.",
      };
    case EnvId::FrozenLake:
      return {
          "Frozen Lake is a grid game where the goal is to cross a frozen lake "
          "from the start to the goal without falling into any holes.",
          "0: Left (move left), 1: Down (move down), 2: Right (move right), "
          "3: Up (move up)",
          "The state is a single integer equal to row * ncols + col, the "
          "player's position in the grid.",
          "+1: Reach the goal, 0: Otherwise.",
      };
    case EnvId::Taxi:
      return {
          "Taxi is a grid game where the goal is to pick up a passenger and "
          "drop them off at their destination, one of four landmarks on the "
          "map, in as few steps as possible.",
          "0: Down (move down), 1: Up (move up), 2: Right (move right), "
          "3: Left (move left), 4: Pickup (pick up the passenger), "
          "5: Drop-off (drop off the passenger)",
          "The state is a single integer equal to ((taxi_row * 5 + taxi_col) * "
          "5 + passenger_location) * 4 + destination.",
          "+20: Successful drop-off, -1: Each step taken, -10: Illegal pickup "
          "or drop-off.",
      };
  }
  throw ConfigError("task_description: unknown environment");
}

}  // namespace parl
