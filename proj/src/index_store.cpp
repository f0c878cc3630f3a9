#include "ontosearch/index_store.hpp"

#include <json.hpp>

#include "io_util.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/hashing.hpp"

namespace ontosearch {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "ontosearch-index";
constexpr int kFormatVersion = 1;

OntologyFiles ontology_files(const fs::path& dir) {
  return {dir / "concepts.tsv", dir / "labels.tsv", dir / "relations.tsv"};
}

EncoderKind parse_kind(std::string_view s) {
  if (s == "subword") return EncoderKind::Subword;
  if (s == "word-vectors") return EncoderKind::WordVectors;
  if (s == "precomputed") return EncoderKind::Precomputed;
  throw Error(ErrorCode::BadIndexFile, "unknown encoder kind " + std::string(s));
}

}  // namespace

std::string_view to_string(EncoderKind kind) noexcept {
  switch (kind) {
    case EncoderKind::Subword: return "subword";
    case EncoderKind::WordVectors: return "word-vectors";
    case EncoderKind::Precomputed: return "precomputed";
  }
  return "subword";
}

std::unique_ptr<Encoder> load_encoder(EncoderKind kind, const fs::path& path) {
  switch (kind) {
    case EncoderKind::Subword: return std::make_unique<SubwordEmbedder>(SubwordEmbedder::load(path));
    case EncoderKind::WordVectors:
      return std::make_unique<StaticWordVectors>(StaticWordVectors::load(path));
    case EncoderKind::Precomputed:
      return std::make_unique<PrecomputedEncoder>(PrecomputedEncoder::load(path));
  }
  throw Error(ErrorCode::Internal, "unhandled encoder kind");
}

void build_index_dir(const OntologyGraph& graph, const IndexBuildOptions& options,
                     const fs::path& out_dir) {
  if (!options.encoder_kind && !options.bm25) {
    throw Error(ErrorCode::UsageError, "nothing to index: choose an encoder and/or BM25");
  }
  std::error_code ec;
  fs::create_directories(out_dir / "ontology", ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  save_ontology(graph, ontology_files(out_dir / "ontology"));
  StopWords stopwords = options.stopwords_path.empty() ? StopWords::english_default()
                                                       : StopWords::load(options.stopwords_path);
  stopwords.save(out_dir / "stopwords.txt");

  json manifest = {{"format", kFormat}, {"version", kFormatVersion}, {"concepts", graph.size()}};
  manifest["stopwords"] = to_hex(stopwords.fingerprint());

  if (options.encoder_kind) {
    auto encoder = load_encoder(*options.encoder_kind, options.encoder_path);
    const std::string file = "encoder." + std::string(to_string(*options.encoder_kind));
    detail::write_file(out_dir / file, detail::read_file(options.encoder_path));
    auto index = build_vector_index(graph, *encoder);
    index.save(out_dir / "vector.idx");
    manifest["vector"] = {{"encoder", to_string(*options.encoder_kind)},
                          {"encoder_file", file},
                          {"fingerprint", encoder->fingerprint()},
                          {"dimension", index.dimension()},
                          {"rows", index.size()},
                          {"file", "vector.idx"}};
  } else {
    manifest["vector"] = nullptr;
    fs::remove(out_dir / "vector.idx", ec);
  }

  if (options.bm25) {
    auto index = Bm25Index::build(graph, stopwords, options.bm25_params);
    index.save(out_dir / "bm25.idx");
    manifest["bm25"] = {{"k1", options.bm25_params.k1},
                        {"b", options.bm25_params.b},
                        {"documents", index.document_count()},
                        {"avgdl", index.average_length()},
                        {"file", "bm25.idx"}};
  } else {
    manifest["bm25"] = nullptr;
    fs::remove(out_dir / "bm25.idx", ec);
  }
  detail::write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

SearchIndex SearchIndex::open(const fs::path& dir) {
  json manifest;
  try {
    manifest = json::parse(detail::read_file(dir / "manifest.json"));
    if (manifest.at("format") != kFormat || manifest.at("version") != kFormatVersion) {
      throw Error(ErrorCode::BadIndexFile, "unsupported index format in " + dir.string());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadIndexFile, "bad manifest in " + dir.string() + ": " + e.what());
  }

  SearchIndex index;
  index.ontology_ = load_ontology(ontology_files(dir / "ontology"));
  index.stopwords_ = StopWords::load(dir / "stopwords.txt");

  try {
    if (!manifest.at("vector").is_null()) {
      const auto& v = manifest.at("vector");
      auto kind = parse_kind(v.at("encoder").get<std::string>());
      index.encoder_ = load_encoder(kind, dir / v.at("encoder_file").get<std::string>());
      index.vector_ = VectorIndex::load(dir / v.at("file").get<std::string>());
      if (index.encoder_->fingerprint() != index.vector_->encoder_fingerprint()) {
        throw Error(ErrorCode::EncoderMismatch, "vector index and encoder in " + dir.string() +
                                                    " do not belong together");
      }
    }
    if (!manifest.at("bm25").is_null()) {
      index.bm25_ = Bm25Index::load(dir / manifest.at("bm25").at("file").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadIndexFile, "bad manifest in " + dir.string() + ": " + e.what());
  }
  return index;
}

std::unique_ptr<Ranker> SearchIndex::ranker(std::string_view name) const {
  if (name == "vector") {
    if (!vector_) throw Error(ErrorCode::UnknownRanker, "index has no vector ranker");
    return std::make_unique<VectorRanker>(*vector_, *encoder_);
  }
  if (name == "bm25") {
    if (!bm25_) throw Error(ErrorCode::UnknownRanker, "index has no bm25 ranker");
    return std::make_unique<Bm25Ranker>(*bm25_);
  }
  throw Error(ErrorCode::UnknownRanker, "unknown ranker '" + std::string(name) + "'");
}

std::string SearchIndex::health_json() const {
  json j = {{"status", "ok"}, {"concepts", ontology_.size()}};
  j["vector"] = vector_ ? json{{"fingerprint", vector_->encoder_fingerprint()}, {"rows", vector_->size()}}
                        : json(nullptr);
  j["bm25"] = bm25_ ? json{{"documents", bm25_->document_count()},
                           {"stopwords", to_hex(bm25_->stopwords().fingerprint())}}
                    : json(nullptr);
  return j.dump();
}

std::string SearchIndex::concept_json(std::string_view id) const {
  const Concept& c = ontology_.at(id);
  json j = {{"id", c.id},
            {"labels", c.labels},
            {"parent_ids", c.parent_ids},
            {"child_ids", ontology_.children(id)}};
  return j.dump();
}

}  // namespace ontosearch
