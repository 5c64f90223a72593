#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "parl/errors.hpp"
#include "parl/llm/backends.hpp"

namespace parl {

using nlohmann::json;

HttpOptions http_options_from_env() {
  HttpOptions options;
  if (const char* url = std::getenv("LLM_BASE_URL")) options.base_url = url;
  if (const char* key = std::getenv("LLM_API_KEY")) options.api_key = key;
  if (const char* model = std::getenv("LLM_MODEL")) options.model = model;
  if (options.base_url.empty())
    throw ConfigError("http backend requires LLM_BASE_URL");
  return options;
}

namespace {

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(HttpOptions options) : options_(std::move(options)) {}

  std::string complete(const CompletionRequest& request) override {
    const std::string body = request_body(request);
    double backoff_s = options_.backoff_initial_s;
    std::string last_error;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
      if (attempt > 1) {
        std::this_thread::sleep_for(std::chrono::duration<double>(backoff_s));
        backoff_s *= 2.0;
      }
      httplib::Client client(options_.base_url);
      client.set_connection_timeout(options_.timeout_s, 0);
      client.set_read_timeout(options_.timeout_s, 0);
      httplib::Headers headers;
      if (!options_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + options_.api_key);
      auto res = client.Post("/v1/chat/completions", headers, body, "application/json");
      if (!res) {
        last_error = "transport failure: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status >= 200 && res->status < 300) return parse_response(res->body);
      if (res->status >= 400 && res->status < 500) {
        throw ConfigError("chat completion rejected with HTTP " +
                          std::to_string(res->status) + ": " + res->body);
      }
      last_error = "HTTP " + std::to_string(res->status);
    }
    throw TransportError("chat completion failed after " +
                         std::to_string(options_.max_attempts) +
                         " attempts; last error: " + last_error);
  }

  std::string name() const override { return "http"; }

 private:
  std::string request_body(const CompletionRequest& request) const {
    json messages = json::array();
    for (const auto& m : request.messages) {
      messages.push_back(json{{"role", role_name(m.role)}, {"content", m.content}});
    }
    return json{{"model", request.model.empty() ? options_.model : request.model},
                {"messages", messages},
                {"temperature", request.temperature},
                {"max_tokens", request.max_tokens}}
        .dump();
  }

  static std::string parse_response(const std::string& body) {
    try {
      const json j = json::parse(body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      throw TransportError(std::string("malformed chat completion response: ") +
                           e.what());
    }
  }

  HttpOptions options_;
};

}  // namespace

std::unique_ptr<Backend> make_http_backend(HttpOptions options) {
  return std::make_unique<HttpBackend>(std::move(options));
}

}  // namespace parl
