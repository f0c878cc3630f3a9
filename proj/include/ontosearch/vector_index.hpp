#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontosearch/encoders.hpp"
#include "ontosearch/hits.hpp"
#include "ontosearch/ontology.hpp"

namespace ontosearch {

struct IndexRow {
  ConceptId concept_id;
  std::string label;

  bool operator==(const IndexRow&) const = default;
};

/// Exact cosine index over unit-normalised label vectors, one row per
/// (concept, label). Zero vectors are stored as zero and score 0.
class VectorIndex {
 public:
  VectorIndex() = default;
  VectorIndex(std::size_t dimension, std::string encoder_fingerprint);

  void add(ConceptId concept_id, std::string label, std::span<const double> vector);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return meta_.size(); }
  bool empty() const noexcept { return meta_.empty(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(rows_).subspan(i * dimension_, dimension_);
  }
  const IndexRow& meta(std::size_t i) const { return meta_[i]; }
  const std::string& encoder_fingerprint() const noexcept { return fingerprint_; }

  /// Best-scoring row per concept against a raw query vector (normalised
  /// here). Row order decides between equal scores within a concept.
  std::vector<ConceptScore> concept_scores(std::span<const double> query) const;

  void save(const std::filesystem::path& path) const;
  static VectorIndex load(const std::filesystem::path& path);

  bool operator==(const VectorIndex&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::string fingerprint_;
  std::vector<double> rows_;
  std::vector<IndexRow> meta_;
  std::vector<ConceptId> concepts_;        // distinct, first-seen order
  std::vector<std::size_t> row_concept_;   // row -> position in concepts_
  std::unordered_map<ConceptId, std::size_t> ordinal_of_;
};

/// One row per (concept, label), concepts in id order, labels in sequence order.
VectorIndex build_vector_index(const OntologyGraph& graph, const Encoder& encoder);

std::vector<RankedHit> search_vector(const VectorIndex& index, std::span<const double> query,
                                     std::size_t k);

/// Throws EncoderMismatch if `encoder` is not the one the index was built with.
std::vector<RankedHit> search_text(const VectorIndex& index, std::string_view query, std::size_t k,
                                   const Encoder& encoder);

/// Runs every label as a query and keeps each concept's max score.
/// Throws EmptyQueryConcept for an empty label list.
std::vector<RankedHit> search_concept(const VectorIndex& index, std::span<const std::string> labels,
                                      std::size_t k, const Encoder& encoder);

}  // namespace ontosearch
