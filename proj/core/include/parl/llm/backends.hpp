#pragma once

#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parl/llm/chat.hpp"
#include "parl/llm/transcript.hpp"

namespace parl {

/// A chat-completion provider. Implementations must be safe for concurrent
/// use from independent runs; calls within one rollout are sequential.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual std::string name() const = 0;
};

/// Validates the request and returns the assistant text.
std::string complete(Backend& backend, const CompletionRequest& request);

/// Deterministic mock: maps state snippets to replies. The entry whose key
/// occurs latest in the prompt wins (ties prefer the longer key), so the
/// current state -- rendered last -- selects the action even when earlier
/// history mentions other states.
class PolicyTableBackend final : public Backend {
 public:
  explicit PolicyTableBackend(std::vector<std::pair<std::string, std::string>> entries,
                              std::optional<std::string> default_reply = {});
  static PolicyTableBackend from_json_file(const std::filesystem::path& path);

  std::string complete(const CompletionRequest& request) override;
  std::string name() const override { return "policy-table"; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::optional<std::string> default_reply_;
};

/// Deterministic mock: replies from a fixed sequence, then throws
/// ScriptExhaustedError.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> responses);
  ScriptedBackend(ScriptedBackend&& other) noexcept
      : responses_(std::move(other.responses_)), next_(other.next_) {}
  static ScriptedBackend from_json_file(const std::filesystem::path& path);

  std::string complete(const CompletionRequest& request) override;
  std::string name() const override { return "scripted"; }
  std::size_t calls() const { return next_; }

 private:
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
  std::mutex mutex_;
};

/// Serves recorded responses keyed by request hash, in recorded order for
/// repeated identical requests. A missing or exhausted hash raises
/// ReplayGapError naming it.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(const Transcript& transcript);
  ReplayBackend(ReplayBackend&& other) noexcept
      : responses_by_hash_(std::move(other.responses_by_hash_)) {}
  static ReplayBackend from_file(const std::filesystem::path& path);

  std::string complete(const CompletionRequest& request) override;
  std::string name() const override { return "replay"; }

 private:
  std::map<std::string, std::deque<std::string>> responses_by_hash_;
  std::mutex mutex_;
};

/// Decorator that appends every call to a Transcript (and, optionally,
/// streams each entry to a JSONL file so aborted runs keep their partial
/// transcript).
class RecordingBackend final : public Backend {
 public:
  RecordingBackend(Backend& inner, Transcript& transcript,
                   std::optional<std::filesystem::path> live_append_path = {});

  std::string complete(const CompletionRequest& request) override;
  std::string name() const override { return inner_.name() + "+recorded"; }

 private:
  Backend& inner_;
  Transcript& transcript_;
  std::optional<std::filesystem::path> live_path_;
  std::mutex mutex_;
};

struct HttpOptions {
  std::string base_url;   // e.g. https://api.example.com or http://localhost:8080
  std::string api_key;
  std::string model = "gpt-4o";
  int max_attempts = 5;        // bounded exponential backoff between attempts
  double backoff_initial_s = 0.5;
  int timeout_s = 60;
};

/// Reads LLM_BASE_URL, LLM_API_KEY, LLM_MODEL. Throws ConfigError when the
/// base URL is missing.
HttpOptions http_options_from_env();

/// OpenAI-compatible chat-completions client (POST /v1/chat/completions).
std::unique_ptr<Backend> make_http_backend(HttpOptions options);

/// Parses "http", "mock:<path>" or "replay:<path>".
std::unique_ptr<Backend> make_backend(const std::string& selector);

}  // namespace parl
