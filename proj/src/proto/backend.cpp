#include "egrlab/proto/backend.hpp"

#include <algorithm>
#include <cctype>

#include "egrlab/errors.hpp"
#include "egrlab/faith/backends.hpp"
#include "egrlab/rng.hpp"

namespace egrlab::proto {

std::string to_string(AgentRole r) {
  switch (r) {
    case AgentRole::kAgent:
      return "agent";
    case AgentRole::kDebater:
      return "debater";
    case AgentRole::kQuestioner:
      return "questioner";
    case AgentRole::kChecker:
      return "checker";
    case AgentRole::kJudge:
      return "judge";
  }
  return "agent";
}

namespace {

using faith::RoundOutput;
using faith::Verdict;

int count_tokens(const std::string& text) {
  return static_cast<int>(faith::tokenize(text).size());
}

Verdict wrong_verdict(Verdict gold, rng::Engine& eng) {
  static constexpr Verdict kAll[] = {Verdict::kSupports, Verdict::kRefutes,
                                     Verdict::kNotEnoughInfo};
  std::vector<Verdict> others;
  for (const Verdict v : kAll) {
    if (v != gold) {
      others.push_back(v);
    }
  }
  return others[eng.below(others.size())];
}

// Strict majority; exact ties give NOT-ENOUGH-INFO.
Verdict majority_verdict(const std::vector<RoundOutput>& outputs) {
  int counts[3] = {0, 0, 0};
  for (const RoundOutput& o : outputs) {
    counts[static_cast<int>(o.verdict)] += 1;
  }
  int best = 0;
  for (int v = 1; v < 3; ++v) {
    if (counts[v] > counts[best]) {
      best = v;
    }
  }
  for (int v = 0; v < 3; ++v) {
    if (v != best && counts[v] == counts[best]) {
      return Verdict::kNotEnoughInfo;
    }
  }
  return static_cast<Verdict>(best);
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (const char c : text) {
    current.push_back(c);
    if (c == '.' || c == '!' || c == '?') {
      while (!current.empty() && std::isspace(static_cast<unsigned char>(current.front()))) {
        current.erase(current.begin());
      }
      if (!current.empty()) {
        out.push_back(current);
      }
      current.clear();
    }
  }
  while (!current.empty() && std::isspace(static_cast<unsigned char>(current.front()))) {
    current.erase(current.begin());
  }
  if (!current.empty()) {
    out.push_back(current);
  }
  return out;
}

std::string join_sentences(const std::vector<std::string>& sentences) {
  std::string out;
  for (const std::string& s : sentences) {
    if (!out.empty()) {
      out += ' ';
    }
    out += s;
  }
  return out;
}

bool is_filler_sentence(const std::string& sentence) {
  const auto& pool = ScriptedMock::filler_pool();
  return std::find(pool.begin(), pool.end(), sentence) != pool.end();
}

const MockProfile& profile_of(const BackendRequest& req) {
  static const MockProfile kDefault;
  return req.mock_profile ? *req.mock_profile : kDefault;
}

Verdict pick_initial_verdict(const BackendRequest& req, const MockProfile& profile,
                             rng::Engine& eng) {
  // First draw from the engine, so the correctness coin for a given
  // (seed, claim, agent) is shared across conditions.
  const bool correct = eng.bernoulli(profile.accuracy);
  if (!req.gold) {
    return Verdict::kNotEnoughInfo;
  }
  return correct ? *req.gold : wrong_verdict(*req.gold, eng);
}

BackendReply initial_response(const BackendRequest& req, const MockProfile& profile,
                              rng::Engine& eng) {
  BackendReply reply;
  reply.verdict = pick_initial_verdict(req, profile, eng);

  std::vector<std::string> sentences;
  const std::size_t available = req.evidence.size();
  const std::size_t grounded =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(profile.grounded_claims, 0)),
                            available);
  for (std::size_t k = 0; k < grounded; ++k) {
    const std::size_t idx = (static_cast<std::size_t>(req.agent_index) + k) % available;
    sentences.push_back(ScriptedMock::echo_passage(req.evidence[idx].text, idx));
  }
  const auto& pool = ScriptedMock::filler_pool();
  for (int f = 0; f < profile.filler_claims; ++f) {
    sentences.push_back(pool[eng.below(pool.size())]);
  }
  reply.text = join_sentences(sentences);
  reply.confidence = 0.7 + 0.2 * eng.uniform01();
  return reply;
}

BackendReply debate_step_response(const BackendRequest& req, const MockProfile& profile,
                                  rng::Engine& eng) {
  BackendReply reply;
  const std::vector<RoundOutput>& prev = req.previous_round;
  const RoundOutput* own = nullptr;
  for (const RoundOutput& o : prev) {
    if (o.agent_id == "a" + std::to_string(req.agent_index)) {
      own = &o;
    }
  }
  if (own == nullptr) {
    throw BackendUnavailable("debate step without the agent's previous output");
  }

  std::vector<std::string> kept;
  for (const std::string& s : split_sentences(own->text)) {
    if (is_filler_sentence(s) || !eng.bernoulli(profile.decay_rate)) {
      kept.push_back(s);
    }
  }
  if (prev.size() > 1 && eng.bernoulli(profile.copy_rate)) {
    // Echo one sentence from a random peer.
    std::vector<const RoundOutput*> peers;
    for (const RoundOutput& o : prev) {
      if (o.agent_id != own->agent_id) {
        peers.push_back(&o);
      }
    }
    const RoundOutput* peer = peers[eng.below(peers.size())];
    const std::vector<std::string> peer_sentences = split_sentences(peer->text);
    if (!peer_sentences.empty()) {
      const std::string& pick = peer_sentences[eng.below(peer_sentences.size())];
      if (std::find(kept.begin(), kept.end(), pick) == kept.end()) {
        kept.push_back(pick);
      }
    }
  }
  if (kept.empty()) {
    kept.push_back("I agree with the prior assessment.");
  }

  reply.text = join_sentences(kept);
  const Verdict majority = majority_verdict(prev);
  if (eng.bernoulli(profile.conformity) && majority != Verdict::kNotEnoughInfo) {
    reply.verdict = majority;
  } else {
    reply.verdict = own->verdict;
  }
  reply.confidence = std::min(0.95, own->confidence + 0.05);
  return reply;
}

BackendReply questioner_response(const BackendRequest& req, rng::Engine& eng) {
  BackendReply reply;
  if (req.evidence.empty()) {
    throw BackendUnavailable("questioner needs candidate passages");
  }
  const std::size_t idx = eng.below(req.evidence.size());
  // req.question carries the question-type tag chosen by the protocol.
  reply.text = "(" + req.question + ") How does the claim square with: " +
               req.evidence[idx].text;
  reply.verdict = Verdict::kNotEnoughInfo;
  reply.confidence = 0.5;
  return reply;
}

BackendReply checker_response(const BackendRequest& req, const MockProfile& profile,
                              rng::Engine& eng) {
  BackendReply reply;
  if (req.evidence.empty()) {
    throw BackendUnavailable("checker needs retrieved passages");
  }
  reply.text = ScriptedMock::echo_passage(req.evidence.front().text,
                                          rng::fnv1a(req.evidence.front().id));
  const bool correct = eng.bernoulli(profile.accuracy);
  reply.verdict = req.gold ? (correct ? *req.gold : wrong_verdict(*req.gold, eng))
                           : Verdict::kNotEnoughInfo;
  reply.confidence = 0.85;
  return reply;
}

BackendReply judge_response(const BackendRequest& req, rng::Engine& eng) {
  BackendReply reply;
  const std::vector<RoundOutput>& prev = req.previous_round;
  if (prev.empty()) {
    throw BackendUnavailable("judge needs the final round outputs");
  }
  reply.verdict = majority_verdict(prev);

  std::vector<std::string> pooled;
  for (const RoundOutput& o : prev) {
    for (const std::string& s : split_sentences(o.text)) {
      if (std::find(pooled.begin(), pooled.end(), s) == pooled.end()) {
        pooled.push_back(s);
      }
    }
  }
  std::vector<std::string> sentences;
  sentences.push_back("Verdict: " + faith::to_string(reply.verdict) + ".");
  const std::size_t quota = std::min<std::size_t>(3, pooled.size());
  for (std::size_t k = 0; k < quota; ++k) {
    const std::string& pick = pooled[eng.below(pooled.size())];
    if (std::find(sentences.begin(), sentences.end(), pick) == sentences.end()) {
      sentences.push_back(pick);
    }
  }
  reply.text = join_sentences(sentences);
  reply.confidence = 0.7;
  return reply;
}

BackendReply dispatch(const BackendRequest& req, const MockProfile& profile) {
  rng::Engine eng(req.seed);
  switch (req.role) {
    case AgentRole::kAgent:
    case AgentRole::kDebater:
      return req.round == 0 ? initial_response(req, profile, eng)
                            : debate_step_response(req, profile, eng);
    case AgentRole::kQuestioner:
      return questioner_response(req, eng);
    case AgentRole::kChecker:
      return checker_response(req, profile, eng);
    case AgentRole::kJudge:
      return judge_response(req, eng);
  }
  throw BackendUnavailable("unknown agent role");
}

}  // namespace

std::string ScriptedMock::echo_passage(const std::string& passage_text, std::uint64_t salt) {
  // Grounded content is paraphrased, never quoted byte-for-byte: a stopword
  // discourse marker plus decapitalization keeps the content tokens intact
  // while the string differs from the passage. Passages are expected to
  // start with an uppercase letter.
  static const std::vector<std::string> kMarkers{"Indeed", "Moreover", "Furthermore",
                                                 "Notably", "Likewise"};
  std::string body = passage_text;
  if (!body.empty() && std::isupper(static_cast<unsigned char>(body.front()))) {
    body.front() = static_cast<char>(std::tolower(static_cast<unsigned char>(body.front())));
  }
  return kMarkers[salt % kMarkers.size()] + ", " + body;
}

const std::vector<std::string>& ScriptedMock::filler_pool() {
  static const std::vector<std::string> kPool{
      "The committee weighs procedural nuance beyond the filed docket.",
      "Panel deliberation emphasizes rhetorical balance across submissions.",
      "Administrative precedent shapes how contested filings get discussed.",
      "Stakeholder sentiment colors the exchange, and scheduling pressure shapes the docket.",
      "Customary protocol guides turn-taking during the session.",
      "Institutional framing privileges consensus over novelty.",
      "The docket timeline constrains how far parties may elaborate.",
      "Observers describe the atmosphere as cordial yet formal.",
      "Scheduling pressure truncated several planned interventions.",
      "The moderator reiterated ground expectations for courteous exchange.",
      "Participants signaled alignment through measured acknowledgement.",
      "Procedural etiquette dominates the recorded minutes.",
  };
  return kPool;
}

BackendReply ScriptedMock::respond(const BackendRequest& req) {
  BackendReply reply = dispatch(req, profile_of(req));
  reply.prompt_tokens = count_tokens(req.prompt);
  reply.completion_tokens = count_tokens(reply.text);
  return reply;
}

BackendReply DistributionalMock::respond(const BackendRequest& req) {
  // Jitter the profile per call, then reuse the scripted behaviour. The
  // jitter draw comes from a separate stream so the scripted draws keep
  // their meaning.
  MockProfile profile = profile_of(req);
  rng::Engine jitter(rng::mix(req.seed, "profile-jitter"));
  profile.grounded_claims =
      std::max(0, profile.grounded_claims + static_cast<int>(jitter.below(3)) - 1);
  profile.filler_claims =
      std::max(0, profile.filler_claims + static_cast<int>(jitter.below(3)) - 1);
  BackendReply reply = dispatch(req, profile);
  reply.prompt_tokens = count_tokens(req.prompt);
  reply.completion_tokens = count_tokens(reply.text);
  return reply;
}

std::unique_ptr<AgentBackend> make_mock_backend(const std::string& name) {
  if (name == "mock" || name == "scripted-mock") {
    return std::make_unique<ScriptedMock>();
  }
  if (name == "mock-dist" || name == "distributional-mock") {
    return std::make_unique<DistributionalMock>();
  }
  throw ConfigError("unknown mock backend: " + name);
}

}  // namespace egrlab::proto
