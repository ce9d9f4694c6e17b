#include "egrlab/faith/backends.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace egrlab::faith {

namespace {

const std::unordered_set<std::string>& stopword_set() {
  static const std::unordered_set<std::string> kStopwords{
      "a",       "an",      "the",     "is",      "are",    "was",    "were",
      "be",      "been",    "being",   "am",      "to",     "of",     "in",
      "on",      "at",      "for",     "with",    "by",     "from",   "as",
      "that",    "this",    "these",   "those",   "it",     "its",    "and",
      "or",      "but",     "if",      "then",    "than",   "so",     "such",
      "do",      "does",    "did",     "done",    "can",    "could",  "will",
      "would",   "shall",   "should",  "may",     "might",  "must",   "have",
      "has",     "had",     "having",  "i",       "we",     "you",    "he",
      "she",     "they",    "them",    "their",   "our",    "your",   "my",
      "me",      "us",      "him",     "her",     "very",   "indeed", "also",
      "too",     "about",   "into",    "over",    "under",  "again",  "further",
      "more",    "most",    "some",    "any",     "each",   "both",   "all",
      "own",     "same",    "other",   "only",    "just",   "there",  "here",
      "when",    "where",   "which",   "who",     "whom",   "what",   "how",
      "why",     "while",   "during",  "before",  "after",  "above",  "below",
      "up",      "down",    "out",     "off",     "once",   "now",    "ever",
      "because", "since",   "therefore", "hence",  "thus",   "moreover",
      "furthermore", "notably", "likewise"};
  return kStopwords;
}

const std::unordered_set<std::string>& negation_set() {
  static const std::unordered_set<std::string> kNegations{
      "not", "no", "never", "cannot", "nor", "neither", "none", "nothing", "without"};
  return kNegations;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char raw : text) {
    const unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

bool is_stopword(const std::string& token) { return stopword_set().count(token) > 0; }

bool is_negation_word(const std::string& token) { return negation_set().count(token) > 0; }

std::set<std::string> content_tokens(const std::string& text) {
  std::set<std::string> out;
  for (const std::string& t : tokenize(text)) {
    if (!is_stopword(t) && !is_negation_word(t)) {
      out.insert(t);
    }
  }
  return out;
}

int negation_parity(const std::string& text) {
  int count = 0;
  for (const std::string& t : tokenize(text)) {
    if (is_negation_word(t)) {
      ++count;
    }
  }
  return count % 2;
}

double TokenOverlapSimilarity::similarity(const std::string& a, const std::string& b) const {
  const std::set<std::string> ta = content_tokens(a);
  const std::set<std::string> tb = content_tokens(b);
  if (ta.empty() || tb.empty()) {
    return 0.0;
  }
  std::size_t inter = 0;
  for (const std::string& t : ta) {
    inter += tb.count(t);
  }
  return static_cast<double>(inter) / static_cast<double>(std::min(ta.size(), tb.size()));
}

int ContainmentEntailment::signed_entailment(const std::string& claim,
                                             const std::string& passage) const {
  const std::set<std::string> tc = content_tokens(claim);
  if (tc.empty()) {
    return 0;
  }
  const std::set<std::string> tp = content_tokens(passage);
  std::size_t inter = 0;
  for (const std::string& t : tc) {
    inter += tp.count(t);
  }
  const double containment = static_cast<double>(inter) / static_cast<double>(tc.size());
  if (containment < threshold_) {
    return 0;
  }
  return negation_parity(claim) == negation_parity(passage) ? 1 : -1;
}

}  // namespace egrlab::faith
