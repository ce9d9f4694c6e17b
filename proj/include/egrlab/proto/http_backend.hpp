#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <string>

#include "egrlab/proto/backend.hpp"

namespace egrlab::proto {

struct HttpBackendConfig {
  std::string base_url = "http://127.0.0.1:8080";
  std::string chat_path = "/v1/chat/completions";
  std::string model = "default-model";
  double temperature = 0.0;
  // Bearer token comes from the environment, never from config files.
  std::string token_env = "EGRLAB_API_TOKEN";
  int max_retries = 3;
  int retry_base_ms = 200;
  int request_budget = 2000;        // per-run cap on requests, retries included
  int max_in_flight = 4;
  int min_request_interval_ms = 0;  // simple rate limit
  int timeout_seconds = 60;
};

// Chat-completion-style JSON client: posts {"model", "messages",
// "temperature"} and reads choices[0].message.content. Retries 429/5xx and
// transport errors with exponential backoff; every request/response pair is
// logged into the reply for the run artifact.
class HttpChatBackend final : public AgentBackend {
 public:
  // Throws ConfigError when the token environment variable is unset.
  explicit HttpChatBackend(HttpBackendConfig config);
  ~HttpChatBackend() override;

  std::string name() const override { return "http:" + config_.model; }
  std::string kind() const override { return "http-chat"; }
  bool deterministic() const override { return false; }
  BackendReply respond(const BackendRequest& request) override;

  int requests_used() const { return requests_used_.load(); }

  // Verdict line parsing, exposed for tests.
  static faith::Verdict parse_verdict(const std::string& text);

 private:
  void throttle();

  HttpBackendConfig config_;
  std::string token_;
  std::atomic<int> requests_used_{0};
  std::atomic<int> in_flight_{0};
  std::mutex throttle_mutex_;
  std::chrono::steady_clock::time_point last_request_;
};

}  // namespace egrlab::proto
