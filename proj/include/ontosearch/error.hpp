#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontosearch {

// The numeric values are mirrored by os_status in ontosearch.h and are part
// of the C ABI. Hundreds digit = owning module.
enum class ErrorCode : int {
  Ok = 0,

  DuplicateConceptId = 100,
  UnknownParentId = 101,
  UnknownConceptId = 102,
  CycleDetected = 103,
  EmptyLabel = 104,
  DuplicateLabel = 105,

  InvalidRatios = 200,

  DimensionMismatch = 300,
  MissingEmbedding = 301,
  EmptyDataset = 302,
  InconsistentDimension = 303,
  InvalidConfig = 304,
  BadModelFile = 305,

  EmptyQueryConcept = 400,
  MalformedStopwordFile = 401,
  BadIndexFile = 402,
  EncoderMismatch = 403,
  InvalidArgument = 404,
  UnknownRanker = 405,

  EmptyQueryAfterStopwords = 500,
  BadBucketEdges = 501,
  LengthMismatch = 502,
  TooFewPairs = 503,
  MalformedQueryFile = 504,
  BadReport = 505,

  Io = 900,
  MalformedLine = 901,
  UsageError = 902,
  Internal = 999,
};

/// Module-qualified name, e.g. "ontology.CycleDetected".
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ontosearch
