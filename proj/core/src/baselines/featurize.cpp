#include "parl/baselines/featurize.hpp"

#include "parl/errors.hpp"

namespace parl {

namespace {
constexpr int kSumSlots = 32;     // player sums 0..31
constexpr int kDealerSlots = 11;  // dealer cards 1..10 (slot 0 unused)
}  // namespace

int feature_size(const EnvSpec& env) {
  switch (env.id) {
    case EnvId::Blackjack: return kSumSlots + kDealerSlots + 2;
    case EnvId::FrozenLake: return 16;
    case EnvId::Taxi: return 500;
  }
  throw ProtocolError("feature_size: unknown environment");
}

Features featurize(const EnvSpec& env, const Observation& obs) {
  if (env.observation_kind == ObservationKind::BlackjackTuple) {
    const auto* bj = std::get_if<BlackjackObs>(&obs);
    if (!bj) throw ProtocolError("featurize: expected a blackjack observation");
    if (bj->player_sum < 0 || bj->player_sum >= kSumSlots)
      throw ProtocolError("featurize: player sum outside the one-hot range");
    return Features::one_hot({bj->player_sum, kSumSlots + bj->dealer_card,
                              kSumSlots + kDealerSlots + (bj->usable_ace ? 1 : 0)},
                             feature_size(env));
  }
  const auto* d = std::get_if<DiscreteIndex>(&obs);
  if (!d) throw ProtocolError("featurize: expected a discrete-index observation");
  return Features::one_hot({d->value}, d->space_size);
}

}  // namespace parl
