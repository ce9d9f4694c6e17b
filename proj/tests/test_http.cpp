#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "egrlab/proto/http_backend.hpp"
#include "egrlab/proto/runner.hpp"

using namespace egrlab;
using namespace egrlab::proto;

namespace {

constexpr const char* kTokenEnv = "EGRLAB_TEST_TOKEN";

// Local chat-completion stub; scripted status sequences model flaky
// endpoints.
class StubServer {
 public:
  explicit StubServer(std::vector<int> status_sequence)
      : statuses_(std::move(status_sequence)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                httplib::Response& res) {
      {
        std::lock_guard<std::mutex> lock(state_mutex_);
        last_auth_ = req.get_header_value("Authorization");
        last_body_ = req.body;
      }
      const std::size_t call = call_count_.fetch_add(1);
      const int status =
          call < statuses_.size() ? statuses_[call] : statuses_.back();
      if (status != 200) {
        res.status = status;
        res.set_content("busy", "text/plain");
        return;
      }
      nlohmann::json reply;
      reply["choices"] = {{{"message",
                            {{"role", "assistant"},
                             {"content",
                              "The filings align with the claim. Verdict: SUPPORTS"}}}}};
      reply["usage"] = {{"prompt_tokens", 42}, {"completion_tokens", 9}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  int port() const { return port_; }
  int calls() const { return static_cast<int>(call_count_.load()); }
  std::string last_auth() const {
    std::lock_guard<std::mutex> lock(state_mutex_);
    return last_auth_;
  }
  std::string last_body() const {
    std::lock_guard<std::mutex> lock(state_mutex_);
    return last_body_;
  }

 private:
  httplib::Server server_;
  std::vector<int> statuses_;
  std::atomic<std::size_t> call_count_{0};
  mutable std::mutex state_mutex_;
  std::string last_auth_;
  std::string last_body_;
  int port_ = 0;
  std::thread thread_;
};

HttpBackendConfig config_for(const StubServer& server) {
  HttpBackendConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(server.port());
  cfg.model = "stub-model";
  cfg.token_env = kTokenEnv;
  cfg.max_retries = 2;
  cfg.retry_base_ms = 10;
  cfg.timeout_seconds = 5;
  return cfg;
}

BackendRequest sample_request() {
  BackendRequest req;
  req.condition_id = "C1";
  req.claim_id = "sc-001";
  req.prompt = "Claim: sample.\nState your reasoning, then end with a verdict line.";
  return req;
}

}  // namespace

TEST_CASE("verdict parsing prefers the explicit not-enough-info label") {
  CHECK(HttpChatBackend::parse_verdict("Verdict: SUPPORTS") == faith::Verdict::kSupports);
  CHECK(HttpChatBackend::parse_verdict("i find REFUTES here") == faith::Verdict::kRefutes);
  CHECK(HttpChatBackend::parse_verdict("NOT-ENOUGH-INFO, leaning SUPPORTS") ==
        faith::Verdict::kNotEnoughInfo);
  CHECK(HttpChatBackend::parse_verdict("no label at all") ==
        faith::Verdict::kNotEnoughInfo);
}

TEST_CASE("missing token environment variable is a configuration error") {
  ::unsetenv(kTokenEnv);
  HttpBackendConfig cfg;
  cfg.token_env = kTokenEnv;
  CHECK_THROWS_AS(HttpChatBackend{cfg}, ConfigError);
}

TEST_CASE("happy path: auth header, wire format, usage, verdict") {
  ::setenv(kTokenEnv, "secret-token", 1);
  StubServer server({200});
  HttpChatBackend backend(config_for(server));

  const BackendReply reply = backend.respond(sample_request());
  CHECK(reply.verdict == faith::Verdict::kSupports);
  CHECK(reply.text.find("filings align") != std::string::npos);
  CHECK(reply.prompt_tokens == 42);
  CHECK(reply.completion_tokens == 9);
  CHECK(server.last_auth() == "Bearer secret-token");

  const nlohmann::json body = nlohmann::json::parse(server.last_body());
  CHECK(body.at("model") == "stub-model");
  CHECK(body.at("messages").size() == 2);
  CHECK(body.at("messages")[1].at("content").get<std::string>().find("Claim: sample") !=
        std::string::npos);

  // Request and response both land in the wire log for the artifact.
  REQUIRE(reply.wire_log.size() == 2);
  CHECK(reply.wire_log[0].starts_with("request POST"));
  CHECK(reply.wire_log[1].find("status 200") != std::string::npos);
}

TEST_CASE("retryable statuses back off and then succeed") {
  ::setenv(kTokenEnv, "secret-token", 1);
  StubServer server({500, 429, 200});
  HttpChatBackend backend(config_for(server));
  const BackendReply reply = backend.respond(sample_request());
  CHECK(reply.verdict == faith::Verdict::kSupports);
  CHECK(server.calls() == 3);
  CHECK(backend.requests_used() == 3);
}

TEST_CASE("persistent failures exhaust retries") {
  ::setenv(kTokenEnv, "secret-token", 1);
  StubServer server({500, 500, 500, 500});
  HttpChatBackend backend(config_for(server));
  CHECK_THROWS_AS(backend.respond(sample_request()), BackendUnavailable);
  CHECK(server.calls() == 3);  // initial + max_retries
}

TEST_CASE("non-retryable client errors fail immediately") {
  ::setenv(kTokenEnv, "secret-token", 1);
  StubServer server({401});
  HttpChatBackend backend(config_for(server));
  CHECK_THROWS_AS(backend.respond(sample_request()), BackendUnavailable);
  CHECK(server.calls() == 1);
}

TEST_CASE("a condition run logs the wire traffic into the artifact") {
  ::setenv(kTokenEnv, "secret-token", 1);
  StubServer server({200});
  HttpChatBackend backend(config_for(server));

  ProtocolConfig cfg;
  cfg.condition_id = "live-smoke";
  cfg.agent_count = 2;
  cfg.max_rounds = 1;
  cfg.aggregation = Aggregation::kMajorityVote;

  std::vector<io::ClaimRecord> corpus;
  io::ClaimRecord record;
  record.claim_id = "c1";
  record.claim_text = "The filings align with the claim.";
  record.gold_label = faith::Verdict::kSupports;
  record.evidence.push_back({"p1", "The filings align with the claim in every section."});
  corpus.push_back(record);

  const RunArtifact artifact = run_condition(cfg, corpus, backend, 3, 2, "mem");
  REQUIRE(artifact.trials.size() == 1);
  const TrialRecord& trial = artifact.trials.front();
  CHECK_FALSE(trial.failed);
  // Two agents times two rounds: four request/response pairs recorded.
  CHECK(trial.wire_log.size() == 8);
  CHECK(trial.prompt_tokens == 4 * 42);
  CHECK(trial.final_verdict == faith::Verdict::kSupports);
  CHECK(server.calls() == 4);
}

TEST_CASE("the per-run request budget is enforced") {
  ::setenv(kTokenEnv, "secret-token", 1);
  StubServer server({200});
  HttpBackendConfig cfg = config_for(server);
  cfg.request_budget = 2;
  HttpChatBackend backend(cfg);
  CHECK_NOTHROW(backend.respond(sample_request()));
  CHECK_NOTHROW(backend.respond(sample_request()));
  CHECK_THROWS_AS(backend.respond(sample_request()), BackendUnavailable);
  CHECK(server.calls() == 2);
}
