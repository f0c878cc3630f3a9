#include "ontosearch/vector_index.hpp"

#include <limits>
#include <unordered_map>

#include "binary_io.hpp"
#include "io_util.hpp"
#include "ontosearch/error.hpp"

namespace ontosearch {

namespace {

constexpr std::string_view kMagic = "OSVECIDX";
constexpr std::uint32_t kVersion = 1;

void require_k(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
}

void require_encoder(const VectorIndex& index, const Encoder& encoder) {
  if (encoder.fingerprint() != index.encoder_fingerprint()) {
    throw Error(ErrorCode::EncoderMismatch,
                "index was built with encoder " + index.encoder_fingerprint() + ", got " +
                    encoder.fingerprint());
  }
}

}  // namespace

VectorIndex::VectorIndex(std::size_t dimension, std::string encoder_fingerprint)
    : dimension_(dimension), fingerprint_(std::move(encoder_fingerprint)) {}

void VectorIndex::add(ConceptId concept_id, std::string label, std::span<const double> vector) {
  if (vector.size() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch,
                "index dimension " + std::to_string(dimension_) + ", vector " +
                    std::to_string(vector.size()));
  }
  const std::size_t offset = rows_.size();
  rows_.insert(rows_.end(), vector.begin(), vector.end());
  normalize(std::span<double>(rows_).subspan(offset, dimension_));

  auto [it, inserted] = ordinal_of_.emplace(concept_id, concepts_.size());
  if (inserted) concepts_.push_back(concept_id);
  const std::size_t ordinal = it->second;
  row_concept_.push_back(ordinal);
  meta_.push_back({std::move(concept_id), std::move(label)});
}

std::vector<ConceptScore> VectorIndex::concept_scores(std::span<const double> query) const {
  if (query.size() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch,
                "index dimension " + std::to_string(dimension_) + ", query " +
                    std::to_string(query.size()));
  }
  std::vector<double> q(query.begin(), query.end());
  normalize(q);

  constexpr double kUnset = -std::numeric_limits<double>::infinity();
  std::vector<double> best(concepts_.size(), kUnset);
  std::vector<std::size_t> best_row(concepts_.size(), 0);
  for (std::size_t i = 0; i < meta_.size(); ++i) {
    const double s = dot(q, row(i));
    const std::size_t c = row_concept_[i];
    if (s > best[c]) {
      best[c] = s;
      best_row[c] = i;
    }
  }

  std::vector<ConceptScore> out;
  out.reserve(concepts_.size());
  for (std::size_t c = 0; c < concepts_.size(); ++c) {
    out.push_back({concepts_[c], meta_[best_row[c]].label, best[c]});
  }
  return out;
}

void VectorIndex::save(const std::filesystem::path& path) const {
  detail::BinaryWriter w;
  w.magic(kMagic);
  w.u32(kVersion);
  w.u64(dimension_);
  w.str(fingerprint_);
  w.u64(meta_.size());
  for (const auto& m : meta_) {
    w.str(m.concept_id);
    w.str(m.label);
  }
  w.f64s(rows_);
  detail::write_file(path, w.bytes());
}

VectorIndex VectorIndex::load(const std::filesystem::path& path) {
  auto bytes = detail::read_file(path);
  detail::BinaryReader r(bytes, ErrorCode::BadIndexFile, path.string());
  r.expect_magic(kMagic);
  if (r.u32() != kVersion) r.fail("unsupported version");
  const auto dimension = r.u64();
  VectorIndex index(static_cast<std::size_t>(dimension), r.str());
  const auto n = r.u64();
  std::vector<IndexRow> meta;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto id = r.str();
    auto label = r.str();
    meta.push_back({std::move(id), std::move(label)});
  }
  auto rows = r.f64s();
  r.expect_end();
  if (rows.size() != n * dimension) r.fail("row count does not match metadata");

  // add() rebuilds the concept grouping. Renormalising can move the last
  // bit, so the stored rows are put back verbatim afterwards.
  for (std::size_t i = 0; i < meta.size(); ++i) {
    index.add(std::move(meta[i].concept_id), std::move(meta[i].label),
              std::span<const double>(rows).subspan(i * dimension, dimension));
  }
  index.rows_ = std::move(rows);
  return index;
}

VectorIndex build_vector_index(const OntologyGraph& graph, const Encoder& encoder) {
  VectorIndex index(encoder.dimension(), encoder.fingerprint());
  for (const auto& [id, c] : graph.concepts()) {
    for (const auto& label : c.labels) {
      auto v = encoder.embed(label);
      index.add(id, label, v);
    }
  }
  return index;
}

std::vector<RankedHit> search_vector(const VectorIndex& index, std::span<const double> query,
                                     std::size_t k) {
  require_k(k);
  return select_top_k(index.concept_scores(query), k);
}

std::vector<RankedHit> search_text(const VectorIndex& index, std::string_view query, std::size_t k,
                                   const Encoder& encoder) {
  require_k(k);
  require_encoder(index, encoder);
  auto q = encoder.embed(query);
  return select_top_k(index.concept_scores(q), k);
}

std::vector<RankedHit> search_concept(const VectorIndex& index, std::span<const std::string> labels,
                                      std::size_t k, const Encoder& encoder) {
  if (labels.empty()) throw Error(ErrorCode::EmptyQueryConcept, "query concept has no labels");
  require_k(k);
  require_encoder(index, encoder);
  std::vector<ConceptScore> acc;
  for (const auto& label : labels) merge_max(acc, index.concept_scores(encoder.embed(label)));
  return select_top_k(std::move(acc), k);
}

}  // namespace ontosearch
