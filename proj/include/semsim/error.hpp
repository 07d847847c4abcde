#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semsim {

enum class ErrorKind {
  CycleDetected,
  EmptyGraph,
  InvalidGraph,
  UnknownSynset,
  MissingFile,
  MalformedLine,
  DanglingPointer,
  UnknownWord,
  DegenerateTable,
  UnboundedIC,
  MalformedRow,
  EmptyDataset,
  LengthMismatch,
  ZeroVariance,
  AllPairsSkipped,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::UnknownSynset: return "UnknownSynset";
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::DanglingPointer: return "DanglingPointer";
    case ErrorKind::UnknownWord: return "UnknownWord";
    case ErrorKind::DegenerateTable: return "DegenerateTable";
    case ErrorKind::UnboundedIC: return "UnboundedIC";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::AllPairsSkipped: return "AllPairsSkipped";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` lets callers dispatch
/// without a catch clause per type; the message carries the details
/// (offending ids, line numbers, file paths).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace semsim
