#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontosearch/bm25.hpp"
#include "ontosearch/encoders.hpp"
#include "ontosearch/hits.hpp"
#include "ontosearch/vector_index.hpp"

namespace ontosearch {

/// Anything that answers text-to-concept and concept-to-concept queries.
class Ranker {
 public:
  virtual ~Ranker() = default;

  virtual std::vector<RankedHit> search_text(std::string_view query, std::size_t k) const = 0;
  virtual std::vector<RankedHit> search_concept(std::span<const std::string> labels,
                                                std::size_t k) const = 0;
};

class VectorRanker final : public Ranker {
 public:
  VectorRanker(const VectorIndex& index, const Encoder& encoder) : index_(index), encoder_(encoder) {}

  std::vector<RankedHit> search_text(std::string_view query, std::size_t k) const override {
    return ontosearch::search_text(index_, query, k, encoder_);
  }
  std::vector<RankedHit> search_concept(std::span<const std::string> labels,
                                        std::size_t k) const override {
    return ontosearch::search_concept(index_, labels, k, encoder_);
  }

 private:
  const VectorIndex& index_;
  const Encoder& encoder_;
};

class Bm25Ranker final : public Ranker {
 public:
  explicit Bm25Ranker(const Bm25Index& index) : index_(index) {}

  std::vector<RankedHit> search_text(std::string_view query, std::size_t k) const override {
    return bm25_search(index_, query, k);
  }
  std::vector<RankedHit> search_concept(std::span<const std::string> labels,
                                        std::size_t k) const override {
    return bm25_search_concept(index_, labels, k);
  }

 private:
  const Bm25Index& index_;
};

}  // namespace ontosearch
