#pragma once

#include <memory>
#include <string>
#include <vector>

#include "egrlab/faith/types.hpp"

namespace egrlab::faith {

class Decomposer {
 public:
  virtual ~Decomposer() = default;
  virtual std::string name() const = 0;
  // May be empty (e.g. for a bare vote tally); deterministic.
  virtual std::vector<AtomicClaim> split(const std::string& text) const = 0;
};

// Sentence segmentation, meta/style filtering, and splitting of causal
// connectives ("because", "since", "therefore", ...).
class RuleDecomposerV1 final : public Decomposer {
 public:
  std::string name() const override { return "rules-v1"; }
  std::vector<AtomicClaim> split(const std::string& text) const override;
};

// Finer-grained variant: additionally segments on semicolons and
// coordinating ", and" clauses, so claim counts differ from v1 while the
// grounded mass is preserved.
class RuleDecomposerV2 final : public Decomposer {
 public:
  std::string name() const override { return "rules-v2"; }
  std::vector<AtomicClaim> split(const std::string& text) const override;
};

std::unique_ptr<Decomposer> make_decomposer(const std::string& name);

// Throws EmptyDecomposition when no verifiable claim remains.
std::vector<AtomicClaim> decompose(const std::string& text, const Decomposer& decomposer);

}  // namespace egrlab::faith
