#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "parl/llm/chat.hpp"

namespace parl {

/// One completed LLM call: the request, its hash, and the reply.
struct TranscriptEntry {
  std::string request_hash;  // sha256 of the canonical request
  CompletionRequest request;
  std::string response_text;
  std::int64_t latency_ms = 0;
  std::string timestamp_utc;  // ISO-8601, e.g. 2024-10-01T12:00:00Z
  bool operator==(const TranscriptEntry&) const = default;
};

TranscriptEntry make_transcript_entry(const CompletionRequest& request,
                                      std::string response_text,
                                      std::int64_t latency_ms);

/// Ordered log of every LLM call in a run. Persisted as JSONL; each line
/// carries the request hash plus an entry hash over (request, response) so
/// tampering with either side is caught on load.
class Transcript {
 public:
  void append(TranscriptEntry entry);
  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  void save_jsonl(const std::filesystem::path& path) const;
  /// Throws CorruptionError when a line fails its integrity checks.
  static Transcript load_jsonl(const std::filesystem::path& path);

  static std::string entry_to_jsonl_line(const TranscriptEntry& entry);
  static TranscriptEntry entry_from_jsonl_line(const std::string& line);

 private:
  std::vector<TranscriptEntry> entries_;
};

/// Spec operation names.
inline void record_transcript(const Transcript& t, const std::filesystem::path& path) {
  t.save_jsonl(path);
}
inline Transcript load_transcript(const std::filesystem::path& path) {
  return Transcript::load_jsonl(path);
}

}  // namespace parl
