#include "parl/decoding.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>

#include "parl/envs/frozen_lake.hpp"
#include "parl/envs/taxi.hpp"
#include "parl/errors.hpp"

namespace parl {

namespace decode_templates {
const char* const kBlackjack =
    "The player's hand totals {player_sum}, and the dealer shows a {dealer_card}.";
const char* const kBlackjackUsableAce = " The player holds a usable ace.";
const char* const kBlackjackNoUsableAce = " The player does not hold a usable ace.";
const char* const kFrozenLake =
    "The player is currently located at row {row}, column {col} in a "
    "{nrows}x{ncols} grid.";
const char* const kTaxi =
    "The taxi is at row {row}, column {col}. The passenger is at location "
    "{passenger}, and the destination is {destination}.";
const char* const kTaxiPassengerRiding =
    "The taxi is at row {row}, column {col}. The passenger is in the taxi, "
    "and the destination is {destination}.";
}  // namespace decode_templates

namespace {

std::atomic<std::uint64_t> g_decode_calls{0};

}  // namespace

std::uint64_t decode_call_count() { return g_decode_calls.load(); }
void reset_decode_call_count() { g_decode_calls.store(0); }

std::string decode_mode_name(DecodeMode mode) {
  return mode == DecodeMode::RawSelf ? "self" : "script";
}

DecodeMode decode_mode_from_name(const std::string& name) {
  if (name == "self") return DecodeMode::RawSelf;
  if (name == "script") return DecodeMode::Script;
  throw ConfigError("unknown decode mode: " + name);
}

std::string render_template(
    std::string_view tmpl,
    const std::vector<std::pair<std::string, std::string>>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i);
      if (close == std::string_view::npos)
        throw std::domain_error("render_template: unterminated placeholder");
      const std::string_view name = tmpl.substr(i + 1, close - i - 1);
      bool found = false;
      for (const auto& [key, value] : values) {
        if (key == name) {
          out += value;
          found = true;
          break;
        }
      }
      if (!found)
        throw std::domain_error("render_template: no value for placeholder '" +
                                std::string(name) + "'");
      i = close + 1;
    } else {
      out += tmpl[i];
      ++i;
    }
  }
  return out;
}

std::string render_raw(const EnvSpec& env, const Observation& obs) {
  if (env.observation_kind == ObservationKind::BlackjackTuple) {
    const auto* bj = std::get_if<BlackjackObs>(&obs);
    if (!bj) throw ProtocolError("render_raw: expected a blackjack observation");
    std::ostringstream out;
    out << "State: [";
    for (std::size_t i = 0; i < bj->player_cards.size(); ++i) {
      if (i > 0) out << ", ";
      out << bj->player_cards[i];
    }
    out << "], [" << bj->dealer_visible_card << "]";
    return out.str();
  }
  const auto* d = std::get_if<DiscreteIndex>(&obs);
  if (!d) throw ProtocolError("render_raw: expected a discrete-index observation");
  return "State: " + std::to_string(d->value);
}

std::string decode_blackjack(const Observation& obs, bool include_usable_ace) {
  g_decode_calls.fetch_add(1);
  const auto* bj = std::get_if<BlackjackObs>(&obs);
  if (!bj) throw ProtocolError("decode_blackjack: expected a blackjack observation");
  std::string text = render_template(
      decode_templates::kBlackjack,
      {{"player_sum", std::to_string(bj->player_sum)},
       {"dealer_card", std::to_string(bj->dealer_card)}});
  if (include_usable_ace) {
    text += bj->usable_ace ? decode_templates::kBlackjackUsableAce
                           : decode_templates::kBlackjackNoUsableAce;
  }
  return text;
}

std::string decode_frozenlake(int index, int nrows, int ncols) {
  g_decode_calls.fetch_add(1);
  if (index < 0 || index >= nrows * ncols)
    throw std::domain_error("decode_frozenlake: index outside the grid");
  return render_template(decode_templates::kFrozenLake,
                         {{"row", std::to_string(index / ncols)},
                          {"col", std::to_string(index % ncols)},
                          {"nrows", std::to_string(nrows)},
                          {"ncols", std::to_string(ncols)}});
}

std::string decode_taxi(int index) {
  g_decode_calls.fetch_add(1);
  const TaxiFields f = taxi_decode(index);
  const std::string dest = kTaxiLandmarkNames[static_cast<std::size_t>(f.destination)];
  if (f.passenger_location == kTaxiInTaxi) {
    return render_template(decode_templates::kTaxiPassengerRiding,
                           {{"row", std::to_string(f.taxi_row)},
                            {"col", std::to_string(f.taxi_col)},
                            {"destination", dest}});
  }
  return render_template(
      decode_templates::kTaxi,
      {{"row", std::to_string(f.taxi_row)},
       {"col", std::to_string(f.taxi_col)},
       {"passenger", kTaxiLandmarkNames[static_cast<std::size_t>(f.passenger_location)]},
       {"destination", dest}});
}

DecodeContext make_decode_context(const Env& env, DecodeMode mode,
                                  bool include_usable_ace) {
  DecodeContext ctx{mode, include_usable_ace, 4, 4};
  if (const auto* fl = dynamic_cast<const FrozenLakeEnv*>(&env)) {
    ctx.fl_nrows = fl->map().nrows;
    ctx.fl_ncols = fl->map().ncols;
  }
  return ctx;
}

std::string render_state(const EnvSpec& env, const Observation& obs,
                         const DecodeContext& ctx) {
  if (ctx.mode == DecodeMode::RawSelf) return render_raw(env, obs);
  switch (env.id) {
    case EnvId::Blackjack:
      return decode_blackjack(obs, ctx.include_usable_ace);
    case EnvId::FrozenLake: {
      const auto* d = std::get_if<DiscreteIndex>(&obs);
      if (!d) throw ProtocolError("render_state: expected a discrete-index observation");
      return decode_frozenlake(d->value, ctx.fl_nrows, ctx.fl_ncols);
    }
    case EnvId::Taxi: {
      const auto* d = std::get_if<DiscreteIndex>(&obs);
      if (!d) throw ProtocolError("render_state: expected a discrete-index observation");
      return decode_taxi(d->value);
    }
  }
  throw ProtocolError("render_state: unknown environment");
}

}  // namespace parl
