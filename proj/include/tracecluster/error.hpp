#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracecluster {

enum class ErrorKind {
  // log ingestion
  kMissingColumn,
  kUnparseableTimestamp,
  kEmptyLog,
  kMalformedXml,
  kMissingConceptName,
  kMissingTimestamp,
  kMalformedCsv,
  kIo,
  // constraints
  kSelfConstraint,
  kUnknownTraceId,
  kMlClConflict,
  kIntraVariantCannotLink,
  kInvalidInput,
  kInfeasibleSampling,
  // similarity / clustering
  kDimensionMismatch,
  kIndexOutOfRange,
  kKOutOfRange,
  kInfeasibleK,
  // evaluation
  kEmptyCluster,
  kDivisionByZero,
  kDomainMismatch,
  // harness / config
  kInvalidSpec,
  kInvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind` is stable and meant for
/// programmatic handling; `what()` is a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tracecluster
