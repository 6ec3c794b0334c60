#pragma once

#include <stdexcept>
#include <string>

namespace scimap {

enum class ErrorKind {
  MissingColumn,
  MalformedRow,
  CyclicMerge,
  DuplicateRuleForLabel,
  UnknownAction,
  EmptyNetwork,
  DegenerateNetwork,
  TooFewNodes,
  DegenerateSimilarity,
  DisconnectedSimilarity,
  SchemaMismatch,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorKind kind);

/// Base exception for every data-level failure raised by the library.
/// `kind()` is stable and machine-readable; `what()` carries detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scimap
