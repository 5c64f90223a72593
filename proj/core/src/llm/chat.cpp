#include "parl/llm/chat.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include <json.hpp>

#include "parl/errors.hpp"

namespace parl {

using nlohmann::json;

std::string role_name(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  throw ProtocolError("role_name: unknown role");
}

Role role_from_name(const std::string& name) {
  if (name == "system") return Role::System;
  if (name == "user") return Role::User;
  if (name == "assistant") return Role::Assistant;
  throw ProtocolError("unknown chat role: " + name);
}

void validate(const CompletionRequest& request) {
  if (request.messages.empty())
    throw ProtocolError("completion request has no messages");
  for (const auto& m : request.messages) {
    if (m.content.empty()) throw ProtocolError("chat message content is empty");
  }
  if (request.messages.back().role != Role::User)
    throw ProtocolError("last chat message must come from the user");
}

std::string canonical_json(const CompletionRequest& request) {
  // nlohmann::json keeps object keys sorted and prints doubles with the
  // shortest round-trip representation, so this encoding is stable across
  // runs and platforms.
  json messages = json::array();
  for (const auto& m : request.messages) {
    messages.push_back(json{{"content", m.content}, {"role", role_name(m.role)}});
  }
  const json j{{"max_tokens", request.max_tokens},
               {"messages", messages},
               {"model", request.model},
               {"temperature", request.temperature}};
  return j.dump();
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256_hex: digest failure");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string request_hash(const CompletionRequest& request) {
  return sha256_hex(canonical_json(request));
}

}  // namespace parl
