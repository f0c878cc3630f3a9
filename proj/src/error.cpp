#include "ontosearch/error.hpp"

namespace ontosearch {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "ok";
    case ErrorCode::DuplicateConceptId: return "ontology.DuplicateConceptId";
    case ErrorCode::UnknownParentId: return "ontology.UnknownParentId";
    case ErrorCode::UnknownConceptId: return "ontology.UnknownConceptId";
    case ErrorCode::CycleDetected: return "ontology.CycleDetected";
    case ErrorCode::EmptyLabel: return "ontology.EmptyLabel";
    case ErrorCode::DuplicateLabel: return "ontology.DuplicateLabel";
    case ErrorCode::InvalidRatios: return "tripletgen.InvalidRatios";
    case ErrorCode::DimensionMismatch: return "embedder.DimensionMismatch";
    case ErrorCode::MissingEmbedding: return "embedder.MissingEmbedding";
    case ErrorCode::EmptyDataset: return "embedder.EmptyDataset";
    case ErrorCode::InconsistentDimension: return "embedder.InconsistentDimension";
    case ErrorCode::InvalidConfig: return "embedder.InvalidConfig";
    case ErrorCode::BadModelFile: return "embedder.BadModelFile";
    case ErrorCode::EmptyQueryConcept: return "ranker.EmptyQueryConcept";
    case ErrorCode::MalformedStopwordFile: return "ranker.MalformedStopwordFile";
    case ErrorCode::BadIndexFile: return "ranker.BadIndexFile";
    case ErrorCode::EncoderMismatch: return "ranker.EncoderMismatch";
    case ErrorCode::InvalidArgument: return "ranker.InvalidArgument";
    case ErrorCode::UnknownRanker: return "ranker.UnknownRanker";
    case ErrorCode::EmptyQueryAfterStopwords: return "eval.EmptyQueryAfterStopwords";
    case ErrorCode::BadBucketEdges: return "eval.BadBucketEdges";
    case ErrorCode::LengthMismatch: return "eval.LengthMismatch";
    case ErrorCode::TooFewPairs: return "eval.TooFewPairs";
    case ErrorCode::MalformedQueryFile: return "eval.MalformedQueryFile";
    case ErrorCode::BadReport: return "eval.BadReport";
    case ErrorCode::Io: return "io.Io";
    case ErrorCode::MalformedLine: return "io.MalformedLine";
    case ErrorCode::UsageError: return "app.UsageError";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace ontosearch
