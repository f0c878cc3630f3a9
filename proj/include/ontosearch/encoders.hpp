#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontosearch/embedding.hpp"

namespace ontosearch {

/// Text -> vector contract shared by every ranker. Implementations are
/// immutable once built, so embed() may be called concurrently.
class Encoder {
 public:
  virtual ~Encoder() = default;

  virtual std::size_t dimension() const = 0;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
  /// Stable identity of the encoder's parameters; stored in vector indexes.
  virtual std::string fingerprint() const = 0;
};

inline EmbeddingVector embed_text(const Encoder& encoder, std::string_view text) {
  return encoder.embed(text);
}

struct SubwordParams {
  std::size_t bucket_count = std::size_t{1} << 16;
  std::size_t dimension = 64;
  int min_n = 3;
  int max_n = 5;
  std::uint64_t seed = 0;
};

// Hashed bag-of-subwords encoder. Each token t contributes the whole-word
// feature "<t>" plus every character n-gram of "<t>" with min_n <= n <= max_n
// (counted in code points, the full padded word excluded). Features map to
// table rows by FNV-1a(feature) mod bucket_count; the embedding is the mean of
// the rows of all features, with repeats counted.
class SubwordEmbedder final : public Encoder {
 public:
  /// Table initialised uniform in [-0.5/d, 0.5/d] from params.seed.
  explicit SubwordEmbedder(const SubwordParams& params);

  std::size_t dimension() const override { return params_.dimension; }
  EmbeddingVector embed(std::string_view text) const override;
  std::string fingerprint() const override;

  /// Feature strings of a text, in emission order.
  std::vector<std::string> feature_strings(std::string_view text) const;
  /// Table rows of a text's features, in emission order.
  std::vector<std::size_t> feature_rows(std::string_view text) const;
  /// Mean of the given rows; zero vector for an empty list.
  EmbeddingVector pool(std::span<const std::size_t> rows) const;

  const SubwordParams& params() const noexcept { return params_; }
  std::span<double> table() noexcept { return table_; }
  std::span<const double> table() const noexcept { return table_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(table_).subspan(r * params_.dimension, params_.dimension);
  }

  void save(const std::filesystem::path& path) const;
  static SubwordEmbedder load(const std::filesystem::path& path);

  bool operator==(const SubwordEmbedder& other) const {
    return params_.bucket_count == other.params_.bucket_count &&
           params_.dimension == other.params_.dimension && params_.min_n == other.params_.min_n &&
           params_.max_n == other.params_.max_n && params_.seed == other.params_.seed &&
           table_ == other.table_;
  }

 private:
  SubwordEmbedder(const SubwordParams& params, std::vector<double> table);

  SubwordParams params_;
  std::vector<double> table_;
};

/// Word2Vec-style averaging baseline: mean of the vectors of known tokens.
class StaticWordVectors final : public Encoder {
 public:
  StaticWordVectors(std::size_t dimension, std::map<std::string, EmbeddingVector, std::less<>> vectors,
                    std::size_t duplicate_count = 0);

  /// Optional "N d" header, then "token v1 ... vd" per line. Duplicate tokens:
  /// the last occurrence wins and duplicate_count() is incremented.
  static StaticWordVectors load(const std::filesystem::path& path);

  std::size_t dimension() const override { return dimension_; }
  /// Tokenises, skips unknown tokens; zero vector if nothing is known.
  EmbeddingVector embed(std::string_view text) const override;
  std::string fingerprint() const override;

  std::size_t vocabulary_size() const noexcept { return vectors_.size(); }
  std::size_t duplicate_count() const noexcept { return duplicate_count_; }
  bool contains(std::string_view token) const { return vectors_.find(token) != vectors_.end(); }

 private:
  std::size_t dimension_;
  std::map<std::string, EmbeddingVector, std::less<>> vectors_;
  std::size_t duplicate_count_;
};

/// Exact-string lookup of vectors computed elsewhere (e.g. transformer CLS or
/// mean-pooled outputs). Unknown strings raise MissingEmbedding.
class PrecomputedEncoder final : public Encoder {
 public:
  PrecomputedEncoder(std::size_t dimension, std::map<std::string, EmbeddingVector, std::less<>> vectors);

  /// "text\tv1 v2 ... vd" per line.
  static PrecomputedEncoder load(const std::filesystem::path& path);
  /// Writes values with 17 significant digits, which round-trips exactly.
  void save(const std::filesystem::path& path) const;

  std::size_t dimension() const override { return dimension_; }
  EmbeddingVector embed(std::string_view text) const override;
  std::string fingerprint() const override;

  std::size_t size() const noexcept { return vectors_.size(); }
  bool contains(std::string_view text) const { return vectors_.find(text) != vectors_.end(); }

 private:
  std::size_t dimension_;
  std::map<std::string, EmbeddingVector, std::less<>> vectors_;
};

}  // namespace ontosearch
