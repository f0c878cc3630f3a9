#include "ontosearch/bm25.hpp"

#include <cmath>

#include "binary_io.hpp"
#include "io_util.hpp"
#include "ontosearch/error.hpp"

namespace ontosearch {

namespace {

constexpr std::string_view kMagic = "OSBM25IX";
constexpr std::uint32_t kVersion = 1;

}  // namespace

Bm25Index Bm25Index::build(const OntologyGraph& graph, const StopWords& stopwords,
                           const Bm25Params& params) {
  Bm25Index index;
  index.params_ = params;
  index.stopwords_ = stopwords;
  for (const auto& [id, c] : graph.concepts()) {
    Bm25Document doc;
    doc.concept_id = id;
    doc.preferred_label = c.preferred_label();
    for (const auto& label : c.labels) {
      for (auto& token : stopwords.filter(tokenize(label))) {
        ++doc.term_freqs[token];
        ++doc.length;
      }
    }
    index.docs_.push_back(std::move(doc));
  }
  index.derive();
  return index;
}

void Bm25Index::derive() {
  df_.clear();
  postings_.clear();
  doc_pos_.clear();
  std::size_t total = 0;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const auto& doc = docs_[i];
    doc_pos_.emplace(doc.concept_id, i);
    total += doc.length;
    for (const auto& [term, tf] : doc.term_freqs) {
      ++df_[term];
      postings_[term].push_back({i, tf});
    }
  }
  avgdl_ = docs_.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs_.size());
}

std::size_t Bm25Index::doc_freq(std::string_view term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

const Bm25Document& Bm25Index::document(std::string_view concept_id) const {
  auto it = doc_pos_.find(concept_id);
  if (it == doc_pos_.end()) {
    throw Error(ErrorCode::UnknownConceptId, "unknown concept id " + std::string(concept_id));
  }
  return docs_[it->second];
}

double Bm25Index::idf(std::string_view term) const {
  const auto n = static_cast<double>(docs_.size());
  const auto df = static_cast<double>(doc_freq(term));
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double Bm25Index::term_weight(double idf, std::uint32_t tf, std::size_t length) const {
  const double f = static_cast<double>(tf);
  const double norm = 1.0 - params_.b + params_.b * static_cast<double>(length) / avgdl_;
  return idf * f * (params_.k1 + 1.0) / (f + params_.k1 * norm);
}

std::vector<ConceptScore> Bm25Index::concept_scores(std::span<const std::string> query_tokens) const {
  std::vector<double> score(docs_.size(), 0.0);
  std::vector<char> matched(docs_.size(), 0);
  for (const auto& token : query_tokens) {
    if (stopwords_.contains(token)) continue;
    auto it = postings_.find(token);
    if (it == postings_.end()) continue;
    const double w = idf(token);
    for (const auto& p : it->second) {
      score[p.doc] += term_weight(w, p.tf, docs_[p.doc].length);
      matched[p.doc] = 1;
    }
  }
  std::vector<ConceptScore> out;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (matched[i]) out.push_back({docs_[i].concept_id, docs_[i].preferred_label, score[i]});
  }
  return out;
}

void Bm25Index::save(const std::filesystem::path& path) const {
  detail::BinaryWriter w;
  w.magic(kMagic);
  w.u32(kVersion);
  w.f64(params_.k1);
  w.f64(params_.b);
  w.u64(stopwords_.fingerprint());
  w.u64(stopwords_.size());
  for (const auto& s : stopwords_.words()) w.str(s);
  w.u64(docs_.size());
  for (const auto& doc : docs_) {
    w.str(doc.concept_id);
    w.str(doc.preferred_label);
    w.u64(doc.length);
    w.u64(doc.term_freqs.size());
    for (const auto& [term, tf] : doc.term_freqs) {
      w.str(term);
      w.u32(tf);
    }
  }
  w.u64(df_.size());
  for (const auto& [term, df] : df_) {
    w.str(term);
    w.u64(df);
  }
  w.f64(avgdl_);
  detail::write_file(path, w.bytes());
}

Bm25Index Bm25Index::load(const std::filesystem::path& path) {
  auto bytes = detail::read_file(path);
  detail::BinaryReader r(bytes, ErrorCode::BadIndexFile, path.string());
  r.expect_magic(kMagic);
  if (r.u32() != kVersion) r.fail("unsupported version");
  Bm25Index index;
  index.params_.k1 = r.f64();
  index.params_.b = r.f64();
  const auto stop_hash = r.u64();
  std::set<std::string, std::less<>> words;
  for (auto n = r.u64(); n > 0; --n) words.insert(r.str());
  index.stopwords_ = StopWords(std::move(words));
  if (index.stopwords_.fingerprint() != stop_hash) r.fail("stop-word hash mismatch");

  for (auto n = r.u64(); n > 0; --n) {
    Bm25Document doc;
    doc.concept_id = r.str();
    doc.preferred_label = r.str();
    doc.length = static_cast<std::size_t>(r.u64());
    for (auto t = r.u64(); t > 0; --t) {
      auto term = r.str();
      doc.term_freqs.emplace(std::move(term), r.u32());
    }
    index.docs_.push_back(std::move(doc));
  }
  std::map<std::string, std::size_t, std::less<>> stored_df;
  for (auto n = r.u64(); n > 0; --n) {
    auto term = r.str();
    stored_df.emplace(std::move(term), static_cast<std::size_t>(r.u64()));
  }
  const double stored_avgdl = r.f64();
  r.expect_end();

  index.derive();
  if (stored_df != index.df_ || stored_avgdl != index.avgdl_) {
    r.fail("document statistics do not match documents");
  }
  return index;
}

Bm25Index build_bm25_index(const OntologyGraph& graph, const std::filesystem::path& stopwords_path,
                           const Bm25Params& params) {
  StopWords stopwords = stopwords_path.empty() ? StopWords{} : StopWords::load(stopwords_path);
  return Bm25Index::build(graph, stopwords, params);
}

double bm25_score(const Bm25Index& index, std::span<const std::string> query_tokens,
                  std::string_view concept_id) {
  const auto& doc = index.document(concept_id);
  for (const auto& s : index.concept_scores(query_tokens)) {
    if (s.concept_id == doc.concept_id) return s.score;
  }
  return 0.0;
}

std::vector<RankedHit> bm25_search(const Bm25Index& index, std::string_view query, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  auto tokens = tokenize(query);
  return select_top_k(index.concept_scores(tokens), k);
}

std::vector<RankedHit> bm25_search_concept(const Bm25Index& index,
                                           std::span<const std::string> labels, std::size_t k) {
  if (labels.empty()) throw Error(ErrorCode::EmptyQueryConcept, "query concept has no labels");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::vector<ConceptScore> acc;
  for (const auto& label : labels) merge_max(acc, index.concept_scores(tokenize(label)));
  return select_top_k(std::move(acc), k);
}

}  // namespace ontosearch
