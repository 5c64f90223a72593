#pragma once

#include <stdexcept>
#include <string>

namespace parl {

/// Action id outside the environment's action space.
class InvalidActionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// API misuse: stepping a finished episode, mismatched env/observation
/// kinds, or a malformed chat request.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Transient transport failure (connect/timeout/5xx). Callers may retry.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unrecoverable configuration problem: bad credentials, HTTP 4xx,
/// unknown env/agent id, unreadable config file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replay backend has no recorded response left for a request hash.
class ReplayGapError : public std::runtime_error {
 public:
  explicit ReplayGapError(std::string request_hash)
      : std::runtime_error("no recorded response for request hash " + request_hash),
        request_hash_(std::move(request_hash)) {}
  const std::string& request_hash() const { return request_hash_; }

 private:
  std::string request_hash_;
};

/// A transcript line failed its integrity check on load.
class CorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scripted backend ran out of queued responses.
class ScriptExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LLM reply contained no recognizable action.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prompt exceeds the token budget and the policy forbids dropping history.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parl
