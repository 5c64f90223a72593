#include "parl/envs/blackjack.hpp"

#include <numeric>
#include <stdexcept>

#include "parl/errors.hpp"

namespace parl {

std::pair<int, bool> hand_value(std::span<const int> cards) {
  if (cards.empty()) throw std::domain_error("hand_value: empty hand");
  int sum = 0;
  bool has_ace = false;
  for (int c : cards) {
    if (c < 1 || c > 10)
      throw std::domain_error("hand_value: card values must be in 1..10");
    sum += c;
    if (c == 1) has_ace = true;
  }
  if (has_ace && sum + 10 <= 21) return {sum + 10, true};
  return {sum, false};
}

int draw_card(SeededRng& rng) {
  const int slot = static_cast<int>(rng.uniform_int(13));
  return slot < 9 ? slot + 1 : 10;
}

const EnvSpec& blackjack_spec() {
  static const EnvSpec spec{
      .id = EnvId::Blackjack,
      .action_count = 2,
      .action_names = {"Stick", "Hit"},
      .reward_set = {{1.0, 0.0, -1.0}},
      .max_steps = 100,
      .observation_kind = ObservationKind::BlackjackTuple,
  };
  return spec;
}

BlackjackState blackjack_reset(SeededRng& rng) {
  BlackjackState state;
  state.player_cards = {draw_card(rng), draw_card(rng)};
  state.dealer_cards = {draw_card(rng), draw_card(rng)};
  state.phase = BlackjackState::Phase::PlayerTurn;
  return state;
}

BlackjackObs blackjack_observe(const BlackjackState& state) {
  const auto [sum, usable] = hand_value(state.player_cards);
  BlackjackObs obs;
  obs.player_sum = sum;
  obs.dealer_card = state.dealer_cards.front();
  obs.usable_ace = usable;
  obs.player_cards = state.player_cards;
  obs.dealer_visible_card = state.dealer_cards.front();
  return obs;
}

std::pair<BlackjackState, StepOutcome> blackjack_step(const BlackjackState& state,
                                                      ActionId action,
                                                      SeededRng& rng) {
  if (state.phase != BlackjackState::Phase::PlayerTurn)
    throw ProtocolError("blackjack_step: episode already finished");
  if (action.index != kBlackjackStick && action.index != kBlackjackHit)
    throw InvalidActionError("blackjack action must be 0 (Stick) or 1 (Hit)");

  BlackjackState next = state;
  StepOutcome outcome;

  if (action.index == kBlackjackHit) {
    next.player_cards.push_back(draw_card(rng));
    const auto [sum, usable] = hand_value(next.player_cards);
    (void)usable;
    if (sum > 21) {
      next.phase = BlackjackState::Phase::Done;
      outcome.reward = -1.0;
      outcome.terminated = true;
    }
  } else {
    // Dealer draws until the best valuation reaches 17, then sums compare.
    while (hand_value(next.dealer_cards).first < 17)
      next.dealer_cards.push_back(draw_card(rng));
    const int player = hand_value(next.player_cards).first;
    const int dealer = hand_value(next.dealer_cards).first;
    next.phase = BlackjackState::Phase::Done;
    outcome.terminated = true;
    if (dealer > 21 || player > dealer) {
      outcome.reward = 1.0;
    } else if (player == dealer) {
      outcome.reward = 0.0;
    } else {
      outcome.reward = -1.0;
    }
  }

  outcome.observation = blackjack_observe(next);
  return {std::move(next), std::move(outcome)};
}

Observation BlackjackEnv::reset(SeededRng& rng) {
  state_ = blackjack_reset(rng);
  return blackjack_observe(state_);
}

StepOutcome BlackjackEnv::step(ActionId action, SeededRng& rng) {
  auto [next, outcome] = blackjack_step(state_, action, rng);
  state_ = std::move(next);
  return outcome;
}

}  // namespace parl
