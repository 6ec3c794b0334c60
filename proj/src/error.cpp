#include "scimap/error.hpp"

namespace scimap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::CyclicMerge: return "CyclicMerge";
    case ErrorKind::DuplicateRuleForLabel: return "DuplicateRuleForLabel";
    case ErrorKind::UnknownAction: return "UnknownAction";
    case ErrorKind::EmptyNetwork: return "EmptyNetwork";
    case ErrorKind::DegenerateNetwork: return "DegenerateNetwork";
    case ErrorKind::TooFewNodes: return "TooFewNodes";
    case ErrorKind::DegenerateSimilarity: return "DegenerateSimilarity";
    case ErrorKind::DisconnectedSimilarity: return "DisconnectedSimilarity";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace scimap
