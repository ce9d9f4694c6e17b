#pragma once

#include <stdexcept>
#include <string>

namespace egrlab {

// Base class for all egrlab errors so callers can catch the whole family.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidDistribution : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct InvalidGenerator : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

struct EmptyDecomposition : Error {
  using Error::Error;
};
struct EmptyEvidence : Error {
  using Error::Error;
};
struct InsufficientRounds : Error {
  using Error::Error;
};
struct DegenerateBaseline : Error {
  using Error::Error;
};

struct BackendUnavailable : Error {
  using Error::Error;
};
struct RetrievalEmpty : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

struct ZeroVariance : Error {
  using Error::Error;
};
struct InsufficientData : Error {
  using Error::Error;
};
struct DegenerateAgreementBase : Error {
  using Error::Error;
};

// Parse errors carry a 1-based location (line for JSONL, row for CSV).
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  std::size_t line;
};
struct DuplicateId : Error {
  using Error::Error;
};
struct MissingField : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};
struct ManifestVersionMismatch : Error {
  using Error::Error;
};

}  // namespace egrlab
