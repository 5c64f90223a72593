#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace parl {

enum class Role { System, User, Assistant };

std::string role_name(Role role);
Role role_from_name(const std::string& name);

struct ChatMessage {
  Role role = Role::User;
  std::string content;
  bool operator==(const ChatMessage&) const = default;
};

struct CompletionRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 16;
  bool operator==(const CompletionRequest&) const = default;
};

/// Throws ProtocolError unless messages are non-empty with non-empty
/// contents and the last message is from the user.
void validate(const CompletionRequest& request);

/// Stable JSON encoding (sorted keys, shortest float repr) used for hashing.
std::string canonical_json(const CompletionRequest& request);

/// Hex SHA-256 of the canonical encoding.
std::string request_hash(const CompletionRequest& request);

std::string sha256_hex(std::string_view data);

}  // namespace parl
