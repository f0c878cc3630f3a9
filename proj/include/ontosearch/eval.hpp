#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontosearch/hits.hpp"
#include "ontosearch/ontology.hpp"
#include "ontosearch/ranker.hpp"
#include "ontosearch/text.hpp"

namespace ontosearch {

// ---------------------------------------------------------------------------
// Queries

/// Free-text query (text set) or concept-to-concept query (labels set).
struct EvalQuery {
  std::string query_id;
  std::optional<std::string> text;
  std::vector<std::string> labels;
  /// Ground truth; one or several concepts.
  std::vector<ConceptId> relevant_ids;

  bool concept_mode() const noexcept { return !text.has_value(); }
};

enum class QueryMode { Text, Concept };

/// `query_id<TAB>text<TAB>id[,id...]`, or in concept mode
/// `query_id<TAB>label1|label2|...<TAB>id[,id...]`.
std::vector<EvalQuery> load_queries(const std::filesystem::path& path, QueryMode mode);

// ---------------------------------------------------------------------------
// Per-query metrics. A query counts as found at the first rank holding any
// of its relevant ids.

std::optional<std::size_t> first_relevant_rank(std::span<const RankedHit> results,
                                                std::span<const ConceptId> relevant);

/// 1 if a relevant concept is within the top k, else 0.
int hits_at_k(std::span<const RankedHit> results, std::span<const ConceptId> relevant, std::size_t k);

/// 1 / rank of the first relevant result; 0 on a miss.
double mrr(std::span<const RankedHit> results, std::span<const ConceptId> relevant);

/// Linear-gain nDCG over the first k gains. The ideal ordering is the same
/// gains sorted descending; 0 when every gain is 0.
double ndcg_from_gains(std::span<const int> gains_in_rank_order, std::size_t k);

/// Gains from the ontology relation of each result to the truth (max over
/// several truths), then ndcg_from_gains.
double ndcg_at_k(std::span<const RankedHit> results, std::span<const ConceptId> truths,
                 const OntologyGraph& graph, std::size_t k);

/// |Tq ∩ Tc| / |Tq| over unique non-stop-word tokens, Tc pooled over all
/// labels of the concept. Throws EmptyQueryAfterStopwords.
double overlap_degree(std::string_view query, const Concept& truth, const StopWords& stopwords);
double overlap_degree(std::span<const std::string> query_texts, const Concept& truth,
                      const StopWords& stopwords);

// ---------------------------------------------------------------------------
// Reports

struct QueryRecord {
  std::string query_id;
  std::optional<std::size_t> first_relevant_rank;
  std::map<std::size_t, int> hits;       // K -> Hits@K
  std::map<std::size_t, double> ndcg;    // K -> nDCG@K
  double mrr = 0.0;
  /// Absent when the query has no non-stop-word token.
  std::optional<double> overlap;
  /// 1-based overlap bucket.
  std::optional<std::size_t> bucket;
  /// Hits@10, kept for the overlap buckets.
  int hits_at_10 = 0;
};

struct OverlapBucket {
  double lower = 0.0;
  double upper = 1.0;
  std::vector<std::string> query_ids;
  /// Absent for an empty bucket.
  std::optional<double> mean_hits_at_10;
};

inline const std::vector<double> kDefaultBucketEdges = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

/// 1-based bucket [lo, hi) holding `overlap`; the last bucket is closed at 1.
std::size_t bucket_of(double overlap, std::span<const double> edges);

/// Throws BadBucketEdges unless edges are strictly increasing from 0 to 1.
std::vector<OverlapBucket> bucketize_by_overlap(std::span<const QueryRecord> rows,
                                                std::span<const double> edges);

struct Significance {
  std::string baseline;
  std::string stat;  // "hits@K" or "rr"
  double t = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

struct EvalReport {
  std::string ranker;
  std::vector<std::size_t> k_list;
  std::vector<QueryRecord> per_query;
  std::map<std::string, double> aggregates;
  std::vector<OverlapBucket> buckets;
  std::vector<Significance> significance;
};

struct EvalOptions {
  std::vector<std::size_t> k_list = {1, 5, 10};
  StopWords stopwords = StopWords::english_default();
  std::vector<double> bucket_edges = kDefaultBucketEdges;
  std::string ranker_name = "vector";
};

/// Runs every query through `ranker`, retrieving max(k_list ∪ {10}) hits,
/// and fills per-query rows, arithmetic-mean aggregates and overlap buckets.
EvalReport evaluate_run(std::span<const EvalQuery> queries, const Ranker& ranker,
                        const OntologyGraph& graph, const EvalOptions& options = {});

enum class SignificanceStat { Hits, ReciprocalRank };

/// Paired t-test of `report` against `baseline`, pairing rows by query id:
/// one entry per K for Hits, one "rr" entry for reciprocal rank.
/// Throws LengthMismatch when the query sets differ.
void add_significance(EvalReport& report, const EvalReport& baseline, const std::string& baseline_name,
                      SignificanceStat stat);

std::string report_to_json(const EvalReport& report);
/// Throws BadReport.
EvalReport report_from_json(std::string_view json);

}  // namespace ontosearch
