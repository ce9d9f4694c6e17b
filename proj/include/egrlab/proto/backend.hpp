#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "egrlab/proto/types.hpp"

namespace egrlab::proto {

enum class AgentRole { kAgent, kDebater, kQuestioner, kChecker, kJudge };

std::string to_string(AgentRole r);

// What one backend call sees. `prompt` is the full assembled text and is
// what gets recorded; the structured fields mirror its content so mock
// backends do not parse prose. `gold` is read only by mocks to realize a
// configured accuracy level and never reaches the prompt.
struct BackendRequest {
  std::string condition_id;
  std::string claim_id;
  AgentRole role = AgentRole::kAgent;
  int agent_index = 0;
  int round = 0;
  std::uint64_t seed = 0;
  std::string prompt;
  std::string claim_text;
  std::vector<faith::Passage> evidence;
  std::vector<faith::RoundOutput> previous_round;
  std::string question;
  std::optional<faith::Verdict> gold;
  const MockProfile* mock_profile = nullptr;
};

struct BackendReply {
  std::string text;
  faith::Verdict verdict = faith::Verdict::kNotEnoughInfo;
  double confidence = 0.5;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  std::vector<std::string> wire_log;
};

class AgentBackend {
 public:
  virtual ~AgentBackend() = default;
  virtual std::string name() const = 0;
  virtual std::string kind() const = 0;  // scripted-mock | distributional-mock | http-chat
  virtual bool deterministic() const = 0;
  virtual BackendReply respond(const BackendRequest& request) = 0;
};

// Deterministic scripted agent: echoes evidence passages at round 0, decays
// grounded content and conforms to the majority in later rounds, and plays
// the three EGSR roles. All behaviour derives from (seed, request).
class ScriptedMock final : public AgentBackend {
 public:
  std::string name() const override { return "scripted-mock"; }
  std::string kind() const override { return "scripted-mock"; }
  bool deterministic() const override { return true; }
  BackendReply respond(const BackendRequest& request) override;

  // The paraphrase applied to echoed passages; exposed so tests can assert
  // echoes are never verbatim passage text.
  static std::string echo_passage(const std::string& passage_text, std::uint64_t salt);
  static const std::vector<std::string>& filler_pool();
};

// Same scripted skeleton with per-call jitter in how much grounded and
// filler content is emitted; still a pure function of (seed, request).
class DistributionalMock final : public AgentBackend {
 public:
  std::string name() const override { return "distributional-mock"; }
  std::string kind() const override { return "distributional-mock"; }
  bool deterministic() const override { return true; }
  BackendReply respond(const BackendRequest& request) override;
};

std::unique_ptr<AgentBackend> make_mock_backend(const std::string& name);

}  // namespace egrlab::proto
