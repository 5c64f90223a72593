#include "parl/llm/backends.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "parl/errors.hpp"

namespace parl {

using nlohmann::json;

std::string complete(Backend& backend, const CompletionRequest& request) {
  validate(request);
  return backend.complete(request);
}

namespace {

std::string last_user_content(const CompletionRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == Role::User) return it->content;
  }
  return {};
}

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read mock file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("mock file " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace

PolicyTableBackend::PolicyTableBackend(
    std::vector<std::pair<std::string, std::string>> entries,
    std::optional<std::string> default_reply)
    : entries_(std::move(entries)), default_reply_(std::move(default_reply)) {}

PolicyTableBackend PolicyTableBackend::from_json_file(
    const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::optional<std::string> default_reply;
  const json& table = j.contains("entries") ? j.at("entries") : j;
  for (const auto& [key, value] : table.items()) {
    if (&table == &j && (key == "type" || key == "default")) continue;
    entries.emplace_back(key, value.get<std::string>());
  }
  if (j.contains("default")) default_reply = j.at("default").get<std::string>();
  return PolicyTableBackend(std::move(entries), std::move(default_reply));
}

std::string PolicyTableBackend::complete(const CompletionRequest& request) {
  const std::string prompt = last_user_content(request);
  std::size_t best_pos = std::string::npos;
  std::size_t best_len = 0;
  const std::string* best = nullptr;
  for (const auto& [key, reply] : entries_) {
    const auto pos = prompt.rfind(key);
    if (pos == std::string::npos) continue;
    if (!best || pos > best_pos || (pos == best_pos && key.size() > best_len)) {
      best_pos = pos;
      best_len = key.size();
      best = &reply;
    }
  }
  if (best) return *best;
  if (default_reply_) return *default_reply_;
  throw ProtocolError("policy-table mock: no entry matches the prompt");
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses)
    : responses_(std::move(responses)) {}

ScriptedBackend ScriptedBackend::from_json_file(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  const json& arr = j.contains("responses") ? j.at("responses") : j;
  return ScriptedBackend(arr.get<std::vector<std::string>>());
}

std::string ScriptedBackend::complete(const CompletionRequest&) {
  std::lock_guard lock(mutex_);
  if (next_ >= responses_.size())
    throw ScriptExhaustedError("scripted mock: response sequence exhausted after " +
                               std::to_string(responses_.size()) + " calls");
  return responses_[next_++];
}

ReplayBackend::ReplayBackend(const Transcript& transcript) {
  for (const auto& entry : transcript.entries()) {
    responses_by_hash_[entry.request_hash].push_back(entry.response_text);
  }
}

ReplayBackend ReplayBackend::from_file(const std::filesystem::path& path) {
  return ReplayBackend(Transcript::load_jsonl(path));
}

std::string ReplayBackend::complete(const CompletionRequest& request) {
  const std::string hash = request_hash(request);
  std::lock_guard lock(mutex_);
  auto it = responses_by_hash_.find(hash);
  if (it == responses_by_hash_.end() || it->second.empty())
    throw ReplayGapError(hash);
  std::string response = std::move(it->second.front());
  it->second.pop_front();
  return response;
}

RecordingBackend::RecordingBackend(Backend& inner, Transcript& transcript,
                                   std::optional<std::filesystem::path> live_append_path)
    : inner_(inner), transcript_(transcript), live_path_(std::move(live_append_path)) {}

std::string RecordingBackend::complete(const CompletionRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  std::string response = inner_.complete(request);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  TranscriptEntry entry = make_transcript_entry(request, response, elapsed);
  {
    std::lock_guard lock(mutex_);
    if (live_path_) {
      std::ofstream out(*live_path_, std::ios::app);
      if (!out) throw ConfigError("cannot append transcript: " + live_path_->string());
      out << Transcript::entry_to_jsonl_line(entry) << '\n';
    }
    transcript_.append(std::move(entry));
  }
  return response;
}

std::unique_ptr<Backend> make_backend(const std::string& selector) {
  if (selector == "http") return make_http_backend(http_options_from_env());
  if (selector.rfind("mock:", 0) == 0) {
    const std::filesystem::path path = selector.substr(5);
    const json j = parse_json_file(path);
    const std::string type = j.value("type", "policy-table");
    if (type == "scripted")
      return std::make_unique<ScriptedBackend>(ScriptedBackend::from_json_file(path));
    if (type == "policy-table")
      return std::make_unique<PolicyTableBackend>(
          PolicyTableBackend::from_json_file(path));
    throw ConfigError("mock file " + path.string() + ": unknown type '" + type + "'");
  }
  if (selector.rfind("replay:", 0) == 0) {
    return std::make_unique<ReplayBackend>(
        ReplayBackend::from_file(selector.substr(7)));
  }
  throw ConfigError("unknown backend selector: " + selector +
                    " (expected http, mock:<path> or replay:<path>)");
}

}  // namespace parl
