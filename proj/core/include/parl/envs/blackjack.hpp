#pragma once

#include <span>
#include <utility>
#include <vector>

#include "parl/envs/env.hpp"

namespace parl {

/// Best hand valuation. `usable_ace` is true iff an ace counted as 11
/// keeps the sum at or below 21; the returned sum then uses that ace as 11.
std::pair<int, bool> hand_value(std::span<const int> cards);

/// One draw from an infinite deck: 1..9 each with weight 1/13, 10 with 4/13.
int draw_card(SeededRng& rng);

struct BlackjackState {
  enum class Phase { PlayerTurn, Done };
  std::vector<int> player_cards;
  std::vector<int> dealer_cards;  // dealer_cards[0] is the visible card
  Phase phase = Phase::PlayerTurn;
};

constexpr int kBlackjackStick = 0;
constexpr int kBlackjackHit = 1;

const EnvSpec& blackjack_spec();

BlackjackState blackjack_reset(SeededRng& rng);
BlackjackObs blackjack_observe(const BlackjackState& state);

/// Hit draws one card and busts above 21 (reward -1). Stick resolves the
/// dealer (draw until hand value >= 17) and compares sums: +1 win, 0 tie,
/// -1 loss. Either way the episode may terminate.
std::pair<BlackjackState, StepOutcome> blackjack_step(const BlackjackState& state,
                                                      ActionId action,
                                                      SeededRng& rng);

class BlackjackEnv final : public Env {
 public:
  const EnvSpec& spec() const override { return blackjack_spec(); }
  Observation reset(SeededRng& rng) override;
  StepOutcome step(ActionId action, SeededRng& rng) override;
  bool done() const override { return state_.phase == BlackjackState::Phase::Done; }
  const BlackjackState& state() const { return state_; }

 private:
  BlackjackState state_{.phase = BlackjackState::Phase::Done};
};

}  // namespace parl
