#include "egrlab/faith/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace egrlab::faith {

double eur(const std::string& trace, const EvidenceSet& evidence,
           const ScoringBackends& backends, double tau_cite) {
  evidence.validate_for_scoring();
  std::vector<AtomicClaim> claims;
  try {
    claims = decompose(trace, *backends.decomposer);
  } catch (const EmptyDecomposition&) {
    return 0.0;  // nothing decomposable cites nothing
  }

  std::size_t cited = 0;
  for (const Passage& passage : evidence.passages) {
    for (const AtomicClaim& claim : claims) {
      const double s = backends.sim->similarity(claim.text, passage.text);
      const int g = backends.gate->signed_entailment(claim.text, passage.text) == 1 ? 1 : 0;
      if (s * g >= tau_cite) {
        ++cited;
        break;
      }
    }
  }
  return static_cast<double>(cited) / static_cast<double>(evidence.passages.size());
}

double rcva(const std::vector<ClaimScore>& claim_scores, Verdict final_verdict) {
  std::size_t adjudicated = 0;
  std::size_t aligned = 0;
  for (const ClaimScore& cs : claim_scores) {
    if (cs.polarity == 0) {
      continue;
    }
    ++adjudicated;
    if ((cs.polarity == 1 && final_verdict == Verdict::kSupports) ||
        (cs.polarity == -1 && final_verdict == Verdict::kRefutes)) {
      ++aligned;
    }
  }
  if (adjudicated == 0) {
    return 0.0;
  }
  return static_cast<double>(aligned) / static_cast<double>(adjudicated);
}

double emc(const std::vector<std::vector<RoundOutput>>& rounds,
           const SimilarityBackend& sim) {
  if (rounds.size() < 2) {
    throw InsufficientRounds("echo coefficient needs at least two rounds");
  }
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t t = 1; t < rounds.size(); ++t) {
    for (const RoundOutput& current : rounds[t]) {
      for (const RoundOutput& peer : rounds[t - 1]) {
        if (peer.agent_id == current.agent_id) {
          continue;
        }
        total += sim.similarity(current.text, peer.text);
        ++pairs;
      }
    }
  }
  if (pairs == 0) {
    throw InsufficientRounds("echo coefficient needs at least one peer pair");
  }
  return total / static_cast<double>(pairs);
}

double soft_jaccard(const std::vector<AtomicClaim>& a, const std::vector<AtomicClaim>& b,
                    const SimilarityBackend& sim, double match_threshold) {
  if (a.empty() && b.empty()) {
    return 1.0;
  }
  if (a.empty() || b.empty()) {
    return 0.0;
  }

  struct Pair {
    double score;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double s = sim.similarity(a[i].text, b[j].text);
      if (s >= match_threshold) {
        pairs.push_back({s, i, j});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::tie(y.score, x.i, x.j) < std::tie(x.score, y.i, y.j);
  });

  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  std::size_t matches = 0;
  for (const Pair& p : pairs) {
    if (!used_a[p.i] && !used_b[p.j]) {
      used_a[p.i] = true;
      used_b[p.j] = true;
      ++matches;
    }
  }
  return static_cast<double>(matches) /
         static_cast<double>(a.size() + b.size() - matches);
}

}  // namespace egrlab::faith
