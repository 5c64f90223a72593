#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parl/envs/env.hpp"

namespace parl {

/// How observations become prompt text: the raw form the environment
/// exposes, or a scripted natural-language sentence.
enum class DecodeMode { RawSelf, Script };

std::string decode_mode_name(DecodeMode mode);
DecodeMode decode_mode_from_name(const std::string& name);

/// Raw rendering: "State: [c1, c2, ...], [d]" for Blackjack, "State: <index>"
/// for the discrete-index environments.
std::string render_raw(const EnvSpec& env, const Observation& obs);

/// "The player's hand totals 20, and the dealer shows a 7." plus an optional
/// trailing usable-ace sentence.
std::string decode_blackjack(const Observation& obs, bool include_usable_ace = true);

/// "The player is currently located at row 1, column 2 in a 4x4 grid."
std::string decode_frozenlake(int index, int nrows, int ncols);

/// "The taxi is at row 0, column 0. The passenger is at location Green, and
/// the destination is Yellow."
std::string decode_taxi(int index);

/// Per-run rendering settings; grid dimensions matter only for FrozenLake.
struct DecodeContext {
  DecodeMode mode = DecodeMode::Script;
  bool include_usable_ace = true;
  int fl_nrows = 4;
  int fl_ncols = 4;
};

/// Captures the env's grid dimensions so map overrides decode correctly.
DecodeContext make_decode_context(const Env& env, DecodeMode mode,
                                  bool include_usable_ace = true);

/// Mode dispatch used by the agent loop.
std::string render_state(const EnvSpec& env, const Observation& obs,
                         const DecodeContext& ctx);

/// Substitutes {name} placeholders. Sentence templates live in
/// core/resources/decoding/ so the exact prompt wording can be audited
/// without reading code; a test pins the compiled copies to those files.
std::string render_template(std::string_view tmpl,
                            const std::vector<std::pair<std::string, std::string>>& values);

namespace decode_templates {
extern const char* const kBlackjack;
extern const char* const kBlackjackUsableAce;
extern const char* const kBlackjackNoUsableAce;
extern const char* const kFrozenLake;
extern const char* const kTaxi;
extern const char* const kTaxiPassengerRiding;
}  // namespace decode_templates

// Test instrumentation: decode_* call counter, used to assert that RawSelf
// rendering never consults the script decoders.
std::uint64_t decode_call_count();
void reset_decode_call_count();

}  // namespace parl
