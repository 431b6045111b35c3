#include "tracecluster/error.hpp"

namespace tracecluster {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMissingColumn: return "MissingColumn";
    case ErrorKind::kUnparseableTimestamp: return "UnparseableTimestamp";
    case ErrorKind::kEmptyLog: return "EmptyLog";
    case ErrorKind::kMalformedXml: return "MalformedXml";
    case ErrorKind::kMissingConceptName: return "MissingConceptName";
    case ErrorKind::kMissingTimestamp: return "MissingTimestamp";
    case ErrorKind::kMalformedCsv: return "MalformedCsv";
    case ErrorKind::kIo: return "Io";
    case ErrorKind::kSelfConstraint: return "SelfConstraint";
    case ErrorKind::kUnknownTraceId: return "UnknownTraceId";
    case ErrorKind::kMlClConflict: return "MlClConflict";
    case ErrorKind::kIntraVariantCannotLink: return "IntraVariantCannotLink";
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kInfeasibleSampling: return "InfeasibleSampling";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kKOutOfRange: return "KOutOfRange";
    case ErrorKind::kInfeasibleK: return "InfeasibleK";
    case ErrorKind::kEmptyCluster: return "EmptyCluster";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kDomainMismatch: return "DomainMismatch";
    case ErrorKind::kInvalidSpec: return "InvalidSpec";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace tracecluster
