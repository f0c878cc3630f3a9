#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontosearch/hits.hpp"
#include "ontosearch/ontology.hpp"
#include "ontosearch/text.hpp"

namespace ontosearch {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  bool operator==(const Bm25Params&) const = default;
};

/// One concept's document: the token multiset of all of its labels.
struct Bm25Document {
  ConceptId concept_id;
  std::string preferred_label;
  std::map<std::string, std::uint32_t, std::less<>> term_freqs;
  std::size_t length = 0;

  bool operator==(const Bm25Document&) const = default;
};

// Okapi BM25 over concept documents:
//   score(D, Q) = sum_{t in Q} idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * |D| / avgdl))
//   idf(t)      = ln(1 + (N - df + 0.5) / (df + 0.5))
// Query tokens are stop-word filtered; repeated query tokens count once each.
class Bm25Index {
 public:
  Bm25Index() = default;

  static Bm25Index build(const OntologyGraph& graph, const StopWords& stopwords,
                         const Bm25Params& params = {});

  const Bm25Params& params() const noexcept { return params_; }
  const StopWords& stopwords() const noexcept { return stopwords_; }
  std::size_t document_count() const noexcept { return docs_.size(); }
  double average_length() const noexcept { return avgdl_; }
  std::size_t doc_freq(std::string_view term) const;
  /// Throws UnknownConceptId.
  const Bm25Document& document(std::string_view concept_id) const;
  const std::vector<Bm25Document>& documents() const noexcept { return docs_; }

  double idf(std::string_view term) const;

  /// Scores of every concept sharing at least one non-stop-word term with the query.
  std::vector<ConceptScore> concept_scores(std::span<const std::string> query_tokens) const;

  void save(const std::filesystem::path& path) const;
  static Bm25Index load(const std::filesystem::path& path);

  bool operator==(const Bm25Index& other) const {
    return params_ == other.params_ && stopwords_ == other.stopwords_ && docs_ == other.docs_ &&
           df_ == other.df_ && avgdl_ == other.avgdl_;
  }

 private:
  struct Posting {
    std::size_t doc;
    std::uint32_t tf;
  };

  void derive();
  double term_weight(double idf, std::uint32_t tf, std::size_t length) const;

  Bm25Params params_;
  StopWords stopwords_;
  std::vector<Bm25Document> docs_;  // ascending concept id
  std::map<std::string, std::size_t, std::less<>> df_;
  double avgdl_ = 0.0;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
  std::map<std::string, std::size_t, std::less<>> doc_pos_;
};

/// Reads the stop-word file; an empty path means no stop-words.
Bm25Index build_bm25_index(const OntologyGraph& graph, const std::filesystem::path& stopwords_path,
                           const Bm25Params& params = {});

/// Query tokens are stop-word filtered before scoring. Throws UnknownConceptId.
double bm25_score(const Bm25Index& index, std::span<const std::string> query_tokens,
                  std::string_view concept_id);

/// Only concepts sharing a term with the query are returned; best_label is
/// the preferred label.
std::vector<RankedHit> bm25_search(const Bm25Index& index, std::string_view query, std::size_t k);

/// Max BM25 score per concept over the query labels. Throws EmptyQueryConcept.
std::vector<RankedHit> bm25_search_concept(const Bm25Index& index,
                                           std::span<const std::string> labels, std::size_t k);

}  // namespace ontosearch
