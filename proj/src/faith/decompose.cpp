#include "egrlab/faith/decompose.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "egrlab/faith/backends.hpp"

namespace egrlab::faith {

namespace {

struct Fragment {
  std::string text;
  std::size_t begin;
  std::size_t end;
};

std::string lowercase(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Meta-discourse markers: sentences about the reasoning process, votes, or
// verdicts carry nothing checkable against evidence.
constexpr std::array<const char*, 16> kMetaMarkers{
    "final vote",   "final answer", "verdict",      "step by step",
    "let's",        "let us",       "i will",       "we will",
    "in summary",   "in conclusion", "to summarize", "i agree with",
    "i think",      "my reasoning", "votes:",       "as an ai",
};

bool is_meta(const std::string& lower) {
  for (const char* marker : kMetaMarkers) {
    if (lower.find(marker) != std::string::npos) {
      return true;
    }
  }
  return false;
}

std::size_t count_content_tokens(const std::string& text) {
  std::size_t n = 0;
  for (const std::string& t : tokenize(text)) {
    if (!is_stopword(t) && !is_negation_word(t)) {
      ++n;
    }
  }
  return n;
}

std::vector<Fragment> split_sentences(const std::string& text, bool semicolons) {
  std::vector<Fragment> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const bool boundary = i == text.size() || text[i] == '.' || text[i] == '!' ||
                          text[i] == '?' || (semicolons && text[i] == ';');
    if (!boundary) {
      continue;
    }
    if (i > start) {
      out.push_back({text.substr(start, i - start), start, i});
    }
    start = i + 1;
  }
  return out;
}

// Splits a fragment at every occurrence of any connective (case-insensitive).
std::vector<Fragment> split_connectives(const Fragment& frag,
                                        const std::vector<std::string>& connectives) {
  std::vector<Fragment> parts{frag};
  for (const std::string& conn : connectives) {
    std::vector<Fragment> next;
    for (const Fragment& part : parts) {
      const std::string lower = lowercase(part.text);
      std::size_t pos = 0;
      std::size_t from = 0;
      while ((pos = lower.find(conn, from)) != std::string::npos) {
        next.push_back({part.text.substr(from, pos - from), part.begin + from, part.begin + pos});
        from = pos + conn.size();
      }
      next.push_back({part.text.substr(from), part.begin + from, part.end});
    }
    parts = std::move(next);
  }
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  const auto junk = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ':' || c == '-';
  };
  while (b < e && junk(s[b])) {
    ++b;
  }
  while (e > b && junk(s[e - 1])) {
    --e;
  }
  return s.substr(b, e - b);
}

std::vector<AtomicClaim> run_rules(const std::string& text, bool semicolons,
                                   const std::vector<std::string>& connectives) {
  std::vector<AtomicClaim> claims;
  for (const Fragment& sentence : split_sentences(text, semicolons)) {
    if (is_meta(lowercase(sentence.text))) {
      continue;
    }
    for (const Fragment& piece : split_connectives(sentence, connectives)) {
      const std::string cleaned = trim(piece.text);
      // A checkable assertion needs at least a subject and a predicate.
      if (count_content_tokens(cleaned) < 2) {
        continue;
      }
      AtomicClaim claim;
      claim.text = cleaned;
      claim.source_span = SourceSpan{piece.begin, piece.end};
      claims.push_back(std::move(claim));
    }
  }
  return claims;
}

}  // namespace

std::vector<AtomicClaim> RuleDecomposerV1::split(const std::string& text) const {
  return run_rules(text, /*semicolons=*/false,
                   {" because ", " since ", " therefore ", " hence ", " thus "});
}

std::vector<AtomicClaim> RuleDecomposerV2::split(const std::string& text) const {
  return run_rules(text, /*semicolons=*/true,
                   {" because ", " since ", " therefore ", " hence ", " thus ", ", and ",
                    " while ", " whereas "});
}

std::unique_ptr<Decomposer> make_decomposer(const std::string& name) {
  if (name == "rules-v1" || name == "v1") {
    return std::make_unique<RuleDecomposerV1>();
  }
  if (name == "rules-v2" || name == "v2") {
    return std::make_unique<RuleDecomposerV2>();
  }
  throw InvalidArgument("unknown decomposer: " + name);
}

std::vector<AtomicClaim> decompose(const std::string& text, const Decomposer& decomposer) {
  if (text.empty()) {
    throw EmptyDecomposition("empty reasoning text");
  }
  std::vector<AtomicClaim> claims = decomposer.split(text);
  if (claims.empty()) {
    throw EmptyDecomposition("no verifiable claim remains after decomposition");
  }
  return claims;
}

}  // namespace egrlab::faith
