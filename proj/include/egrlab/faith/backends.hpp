#pragma once

#include <set>
#include <string>
#include <vector>

namespace egrlab::faith {

// Lowercased alphanumeric tokens, in text order.
std::vector<std::string> tokenize(const std::string& text);
// Token set minus stopwords and negation words: what similarity compares.
std::set<std::string> content_tokens(const std::string& text);
// Parity (0/1) of negation-word occurrences.
int negation_parity(const std::string& text);

bool is_stopword(const std::string& token);
bool is_negation_word(const std::string& token);

class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  virtual std::string name() const = 0;
  virtual bool deterministic() const = 0;
  // Always in [0, 1].
  virtual double similarity(const std::string& a, const std::string& b) const = 0;
};

class EntailmentBackend {
 public:
  virtual ~EntailmentBackend() = default;
  virtual std::string name() const = 0;
  virtual bool deterministic() const = 0;
  virtual double threshold() const = 0;
  // +1: passage entails the claim; -1: passage entails its negation;
  // 0: neither. The SFS gate is the +1 case only.
  virtual int signed_entailment(const std::string& claim, const std::string& passage) const = 0;

  bool entails(const std::string& claim, const std::string& passage) const {
    return signed_entailment(claim, passage) == 1;
  }
};

// Overlap coefficient |A n B| / min(|A|, |B|) on content-token sets.
class TokenOverlapSimilarity final : public SimilarityBackend {
 public:
  std::string name() const override { return "token-overlap"; }
  bool deterministic() const override { return true; }
  double similarity(const std::string& a, const std::string& b) const override;
};

// Directional containment: the fraction of the claim's content tokens found
// in the passage must reach the threshold; a negation-parity mismatch flips
// the judgement to contradiction.
class ContainmentEntailment final : public EntailmentBackend {
 public:
  explicit ContainmentEntailment(double threshold = 0.7) : threshold_(threshold) {}
  std::string name() const override { return "token-containment"; }
  bool deterministic() const override { return true; }
  double threshold() const override { return threshold_; }
  int signed_entailment(const std::string& claim, const std::string& passage) const override;

 private:
  double threshold_;
};

}  // namespace egrlab::faith
