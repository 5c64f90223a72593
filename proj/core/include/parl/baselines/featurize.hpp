#pragma once

#include "parl/baselines/mlp.hpp"
#include "parl/envs/env.hpp"

namespace parl {

/// One-hot width: 16 (FrozenLake), 500 (Taxi), or 45 (Blackjack: 32 sum
/// slots + 11 dealer-card slots + 2 ace slots).
int feature_size(const EnvSpec& env);

/// Discrete indices become single one-hots; the Blackjack tuple becomes
/// three concatenated one-hots over sum, dealer card, and usable ace.
Features featurize(const EnvSpec& env, const Observation& obs);

}  // namespace parl
