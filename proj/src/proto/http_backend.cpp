#include "egrlab/proto/http_backend.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "egrlab/errors.hpp"

namespace egrlab::proto {

namespace {

using nlohmann::json;

struct ParsedUrl {
  std::string host_port;  // scheme://host:port for httplib::Client
};

ParsedUrl parse_base_url(const std::string& base_url) {
  // httplib::Client accepts scheme://host[:port] directly; reject paths here
  // so the chat path stays a separate config knob.
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("base_url must include a scheme, e.g. http://host:port");
  }
  const auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start != std::string::npos) {
    return {base_url.substr(0, path_start)};
  }
  return {base_url};
}

}  // namespace

faith::Verdict HttpChatBackend::parse_verdict(const std::string& text) {
  // NOT-ENOUGH-INFO first: its spellings must not be shadowed by the other
  // two labels appearing in explanatory text.
  if (text.find("NOT-ENOUGH-INFO") != std::string::npos ||
      text.find("NOT ENOUGH INFO") != std::string::npos) {
    return faith::Verdict::kNotEnoughInfo;
  }
  if (text.find("REFUTES") != std::string::npos) {
    return faith::Verdict::kRefutes;
  }
  if (text.find("SUPPORTS") != std::string::npos) {
    return faith::Verdict::kSupports;
  }
  return faith::Verdict::kNotEnoughInfo;
}

HttpChatBackend::HttpChatBackend(HttpBackendConfig config) : config_(std::move(config)) {
  const char* token = std::getenv(config_.token_env.c_str());
  if (token == nullptr || *token == '\0') {
    throw ConfigError("HTTP backend needs the API token in $" + config_.token_env);
  }
  token_ = token;
  parse_base_url(config_.base_url);
  last_request_ = std::chrono::steady_clock::now() -
                  std::chrono::milliseconds(config_.min_request_interval_ms);
}

HttpChatBackend::~HttpChatBackend() = default;

void HttpChatBackend::throttle() {
  if (config_.min_request_interval_ms <= 0) {
    return;
  }
  std::lock_guard<std::mutex> lock(throttle_mutex_);
  const auto now = std::chrono::steady_clock::now();
  const auto earliest =
      last_request_ + std::chrono::milliseconds(config_.min_request_interval_ms);
  if (now < earliest) {
    std::this_thread::sleep_for(earliest - now);
  }
  last_request_ = std::chrono::steady_clock::now();
}

BackendReply HttpChatBackend::respond(const BackendRequest& request) {
  // Bounded concurrency: spin-wait on the in-flight counter.
  while (true) {
    int current = in_flight_.load();
    if (current < config_.max_in_flight &&
        in_flight_.compare_exchange_weak(current, current + 1)) {
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  struct InFlightGuard {
    std::atomic<int>& counter;
    ~InFlightGuard() { counter.fetch_sub(1); }
  } guard{in_flight_};

  json body;
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  body["messages"] = json::array({
      json{{"role", "system"},
           {"content", "You are a careful fact-verification agent. End with a verdict "
                       "line: SUPPORTS, REFUTES, or NOT-ENOUGH-INFO."}},
      json{{"role", "user"}, {"content", request.prompt}},
  });
  const std::string payload = body.dump();

  BackendReply reply;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (requests_used_.fetch_add(1) >= config_.request_budget) {
      requests_used_.fetch_sub(1);
      throw BackendUnavailable("request budget exhausted (" +
                               std::to_string(config_.request_budget) + " requests)");
    }
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.retry_base_ms * (1 << (attempt - 1))));
    }
    throttle();

    httplib::Client client(parse_base_url(config_.base_url).host_port);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_bearer_token_auth(token_);

    const httplib::Result result =
        client.Post(config_.chat_path, payload, "application/json");
    reply.wire_log.push_back("request POST " + config_.chat_path + " " + payload);

    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      reply.wire_log.push_back("response " + last_error);
      continue;
    }
    reply.wire_log.push_back("response status " + std::to_string(result->status) + " " +
                             result->body);
    if (result->status == 429 || result->status >= 500) {
      last_error = "retryable status " + std::to_string(result->status);
      continue;
    }
    if (result->status != 200) {
      throw BackendUnavailable("chat endpoint returned status " +
                               std::to_string(result->status));
    }

    try {
      const json doc = json::parse(result->body);
      const std::string content =
          doc.at("choices").at(0).at("message").at("content").get<std::string>();
      reply.text = content;
      reply.verdict = parse_verdict(content);
      reply.confidence = 0.5;
      if (doc.contains("usage")) {
        reply.prompt_tokens = doc["usage"].value("prompt_tokens", 0);
        reply.completion_tokens = doc["usage"].value("completion_tokens", 0);
      }
      return reply;
    } catch (const json::exception& e) {
      throw BackendUnavailable("malformed chat response: " + std::string(e.what()));
    }
  }
  throw BackendUnavailable("chat endpoint unavailable after " +
                           std::to_string(config_.max_retries + 1) + " attempts: " +
                           last_error);
}

}  // namespace egrlab::proto
