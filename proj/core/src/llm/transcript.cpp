#include "parl/llm/transcript.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "parl/errors.hpp"

namespace parl {

using nlohmann::json;

namespace {

std::string now_utc_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string entry_hash(const std::string& req_hash, const std::string& response) {
  return sha256_hex(req_hash + "\n" + response);
}

}  // namespace

TranscriptEntry make_transcript_entry(const CompletionRequest& request,
                                      std::string response_text,
                                      std::int64_t latency_ms) {
  TranscriptEntry e;
  e.request_hash = request_hash(request);
  e.request = request;
  e.response_text = std::move(response_text);
  e.latency_ms = latency_ms;
  e.timestamp_utc = now_utc_iso8601();
  return e;
}

void Transcript::append(TranscriptEntry entry) { entries_.push_back(std::move(entry)); }

std::string Transcript::entry_to_jsonl_line(const TranscriptEntry& entry) {
  json messages = json::array();
  for (const auto& m : entry.request.messages) {
    messages.push_back(json{{"role", role_name(m.role)}, {"content", m.content}});
  }
  const json j{
      {"request_hash", entry.request_hash},
      {"request",
       {{"model", entry.request.model},
        {"messages", messages},
        {"temperature", entry.request.temperature},
        {"max_tokens", entry.request.max_tokens}}},
      {"response", entry.response_text},
      {"latency_ms", entry.latency_ms},
      {"timestamp", entry.timestamp_utc},
      {"entry_hash", entry_hash(entry.request_hash, entry.response_text)},
  };
  return j.dump();
}

TranscriptEntry Transcript::entry_from_jsonl_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw CorruptionError(std::string("transcript line is not valid JSON: ") + e.what());
  }
  TranscriptEntry entry;
  try {
    entry.request_hash = j.at("request_hash").get<std::string>();
    const auto& req = j.at("request");
    entry.request.model = req.at("model").get<std::string>();
    for (const auto& m : req.at("messages")) {
      entry.request.messages.push_back(ChatMessage{
          role_from_name(m.at("role").get<std::string>()),
          m.at("content").get<std::string>()});
    }
    entry.request.temperature = req.at("temperature").get<double>();
    entry.request.max_tokens = req.at("max_tokens").get<int>();
    entry.response_text = j.at("response").get<std::string>();
    entry.latency_ms = j.at("latency_ms").get<std::int64_t>();
    entry.timestamp_utc = j.at("timestamp").get<std::string>();
  } catch (const json::exception& e) {
    throw CorruptionError(std::string("transcript line is missing fields: ") + e.what());
  }

  if (request_hash(entry.request) != entry.request_hash)
    throw CorruptionError("transcript request does not match its recorded hash " +
                          entry.request_hash);
  const auto expected = j.value("entry_hash", std::string{});
  if (entry_hash(entry.request_hash, entry.response_text) != expected)
    throw CorruptionError("transcript response does not match its entry hash for request " +
                          entry.request_hash);
  return entry;
}

void Transcript::save_jsonl(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write transcript: " + path.string());
  for (const auto& e : entries_) out << entry_to_jsonl_line(e) << '\n';
}

Transcript Transcript::load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read transcript: " + path.string());
  Transcript t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.append(entry_from_jsonl_line(line));
  }
  return t;
}

}  // namespace parl
