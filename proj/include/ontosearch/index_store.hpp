#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ontosearch/bm25.hpp"
#include "ontosearch/encoders.hpp"
#include "ontosearch/ontology.hpp"
#include "ontosearch/ranker.hpp"
#include "ontosearch/text.hpp"
#include "ontosearch/vector_index.hpp"

namespace ontosearch {

enum class EncoderKind { Subword, WordVectors, Precomputed };

std::string_view to_string(EncoderKind kind) noexcept;

/// Loads an encoder file of the given kind.
std::unique_ptr<Encoder> load_encoder(EncoderKind kind, const std::filesystem::path& path);

struct IndexBuildOptions {
  /// Vector index is built when set.
  std::optional<EncoderKind> encoder_kind;
  std::filesystem::path encoder_path;
  bool bm25 = false;
  /// Empty: the bundled English list.
  std::filesystem::path stopwords_path;
  Bm25Params bm25_params;
};

// Self-contained index directory:
//   manifest.json                        kinds, fingerprints, file names
//   ontology/{concepts,labels,relations}.tsv
//   stopwords.txt
//   encoder.<kind>                       copy of the encoder file
//   vector.idx, bm25.idx
void build_index_dir(const OntologyGraph& graph, const IndexBuildOptions& options,
                     const std::filesystem::path& out_dir);

/// A loaded index directory. Immutable; safe for concurrent searches.
class SearchIndex {
 public:
  static SearchIndex open(const std::filesystem::path& dir);

  const OntologyGraph& ontology() const noexcept { return ontology_; }
  const StopWords& stopwords() const noexcept { return stopwords_; }
  const VectorIndex* vector_index() const noexcept { return vector_ ? &*vector_ : nullptr; }
  const Encoder* encoder() const noexcept { return encoder_.get(); }
  const Bm25Index* bm25_index() const noexcept { return bm25_ ? &*bm25_ : nullptr; }

  /// "vector" or "bm25". Throws UnknownRanker when absent from this index.
  std::unique_ptr<Ranker> ranker(std::string_view name) const;

  /// {"concepts":..,"vector":{..}|null,"bm25":{..}|null}
  std::string health_json() const;

  /// Concept record with labels, parent ids and child ids.
  std::string concept_json(std::string_view id) const;

 private:
  OntologyGraph ontology_;
  StopWords stopwords_;
  std::unique_ptr<Encoder> encoder_;
  std::optional<VectorIndex> vector_;
  std::optional<Bm25Index> bm25_;
};

}  // namespace ontosearch
