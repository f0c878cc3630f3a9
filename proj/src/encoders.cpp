#include "ontosearch/encoders.hpp"

#include <charconv>
#include <cstdio>

#include "binary_io.hpp"
#include "io_util.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/hashing.hpp"
#include "ontosearch/random.hpp"
#include "ontosearch/text.hpp"

namespace ontosearch {

namespace {

constexpr std::string_view kSubwordMagic = "OSSUBWRD";
constexpr std::uint32_t kSubwordVersion = 1;

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t hash_vectors(std::string_view kind,
                           const std::map<std::string, EmbeddingVector, std::less<>>& vectors) {
  std::uint64_t h = fnv1a64(kind);
  for (const auto& [key, vec] : vectors) {
    h = fnv1a64(std::as_bytes(std::span(key.data(), key.size())), h);
    h = fnv1a64(std::as_bytes(std::span(vec)), h);
  }
  return h;
}

bool parse_size(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

EmbeddingVector parse_values(const std::vector<std::string_view>& fields, std::size_t first,
                             const std::string& where) {
  EmbeddingVector v;
  v.reserve(fields.size() - first);
  for (std::size_t i = first; i < fields.size(); ++i) {
    v.push_back(detail::parse_double(fields[i], ErrorCode::MalformedLine, where));
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// SubwordEmbedder

SubwordEmbedder::SubwordEmbedder(const SubwordParams& params) : params_(params) {
  if (params.bucket_count == 0 || params.dimension == 0 || params.min_n < 1 ||
      params.max_n < params.min_n) {
    throw Error(ErrorCode::InvalidConfig, "subword model needs B >= 1, d >= 1, 1 <= min_n <= max_n");
  }
  table_.resize(params.bucket_count * params.dimension);
  const double bound = 0.5 / static_cast<double>(params.dimension);
  Rng rng(params.seed);
  for (double& x : table_) x = rng.uniform(-bound, bound);
}

SubwordEmbedder::SubwordEmbedder(const SubwordParams& params, std::vector<double> table)
    : params_(params), table_(std::move(table)) {}

std::vector<std::string> SubwordEmbedder::feature_strings(std::string_view text) const {
  std::vector<std::string> features;
  for (const auto& token : tokenize(text)) {
    std::string padded = "<" + token + ">";
    // Code point start offsets, plus the end.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < padded.size(); ++i) {
      if ((static_cast<unsigned char>(padded[i]) & 0xC0) != 0x80) starts.push_back(i);
    }
    const std::size_t cps = starts.size();
    starts.push_back(padded.size());

    features.push_back(padded);
    for (std::size_t i = 0; i < cps; ++i) {
      for (int n = params_.min_n; n <= params_.max_n; ++n) {
        std::size_t end = i + static_cast<std::size_t>(n);
        if (end > cps) break;
        if (i == 0 && end == cps) continue;
        features.push_back(padded.substr(starts[i], starts[end] - starts[i]));
      }
    }
  }
  return features;
}

std::vector<std::size_t> SubwordEmbedder::feature_rows(std::string_view text) const {
  auto strings = feature_strings(text);
  std::vector<std::size_t> rows;
  rows.reserve(strings.size());
  for (const auto& f : strings) {
    rows.push_back(static_cast<std::size_t>(fnv1a64(f) % params_.bucket_count));
  }
  return rows;
}

EmbeddingVector SubwordEmbedder::pool(std::span<const std::size_t> rows) const {
  EmbeddingVector v(params_.dimension, 0.0);
  if (rows.empty()) return v;
  for (std::size_t r : rows) {
    auto src = row(r);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += src[j];
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (double& x : v) x *= inv;
  return v;
}

EmbeddingVector SubwordEmbedder::embed(std::string_view text) const {
  auto rows = feature_rows(text);
  return pool(rows);
}

std::string SubwordEmbedder::fingerprint() const {
  std::uint64_t h = fnv1a64(std::as_bytes(std::span(table_)));
  return "subword:B=" + std::to_string(params_.bucket_count) +
         ":d=" + std::to_string(params_.dimension) + ":n=" + std::to_string(params_.min_n) + "-" +
         std::to_string(params_.max_n) + ":seed=" + std::to_string(params_.seed) +
         ":table=" + to_hex(h);
}

void SubwordEmbedder::save(const std::filesystem::path& path) const {
  detail::BinaryWriter w;
  w.magic(kSubwordMagic);
  w.u32(kSubwordVersion);
  w.u64(params_.bucket_count);
  w.u64(params_.dimension);
  w.u32(static_cast<std::uint32_t>(params_.min_n));
  w.u32(static_cast<std::uint32_t>(params_.max_n));
  w.u64(params_.seed);
  w.f64s(table_);
  detail::write_file(path, w.bytes());
}

SubwordEmbedder SubwordEmbedder::load(const std::filesystem::path& path) {
  auto bytes = detail::read_file(path);
  detail::BinaryReader r(bytes, ErrorCode::BadModelFile, path.string());
  r.expect_magic(kSubwordMagic);
  if (r.u32() != kSubwordVersion) r.fail("unsupported version");
  SubwordParams params;
  params.bucket_count = r.u64();
  params.dimension = r.u64();
  params.min_n = static_cast<int>(r.u32());
  params.max_n = static_cast<int>(r.u32());
  params.seed = r.u64();
  auto table = r.f64s();
  r.expect_end();
  if (params.bucket_count == 0 || params.dimension == 0 || params.min_n < 1 ||
      params.max_n < params.min_n || table.size() != params.bucket_count * params.dimension) {
    r.fail("inconsistent header");
  }
  return SubwordEmbedder(params, std::move(table));
}

// ---------------------------------------------------------------------------
// StaticWordVectors

StaticWordVectors::StaticWordVectors(std::size_t dimension,
                                     std::map<std::string, EmbeddingVector, std::less<>> vectors,
                                     std::size_t duplicate_count)
    : dimension_(dimension), vectors_(std::move(vectors)), duplicate_count_(duplicate_count) {
  for (const auto& [token, v] : vectors_) {
    if (v.size() != dimension_) {
      throw Error(ErrorCode::InconsistentDimension, "vector for '" + token + "' has wrong dimension");
    }
  }
}

StaticWordVectors StaticWordVectors::load(const std::filesystem::path& path) {
  std::map<std::string, EmbeddingVector, std::less<>> vectors;
  std::size_t dimension = 0;
  std::size_t duplicates = 0;
  bool first = true;
  detail::for_each_record(path, [&](std::size_t line, std::string_view rec) {
    auto fields = split_ws(rec);
    const auto where = detail::location(path, line);
    if (first) {
      first = false;
      std::size_t n = 0, d = 0;
      if (fields.size() == 2 && parse_size(fields[0], n) && parse_size(fields[1], d)) {
        dimension = d;
        return;
      }
    }
    if (fields.size() < 2) throw Error(ErrorCode::MalformedLine, where + ": expected token and values");
    auto values = parse_values(fields, 1, where);
    if (dimension == 0) dimension = values.size();
    if (values.size() != dimension) {
      throw Error(ErrorCode::InconsistentDimension,
                  where + ": expected " + std::to_string(dimension) + " values, got " +
                      std::to_string(values.size()));
    }
    auto [it, inserted] = vectors.insert_or_assign(std::string(fields[0]), std::move(values));
    if (!inserted) ++duplicates;
  });
  if (dimension == 0) throw Error(ErrorCode::MalformedLine, path.string() + ": no vectors");
  return StaticWordVectors(dimension, std::move(vectors), duplicates);
}

EmbeddingVector StaticWordVectors::embed(std::string_view text) const {
  EmbeddingVector v(dimension_, 0.0);
  std::size_t known = 0;
  for (const auto& token : tokenize(text)) {
    auto it = vectors_.find(token);
    if (it == vectors_.end()) continue;
    for (std::size_t j = 0; j < dimension_; ++j) v[j] += it->second[j];
    ++known;
  }
  if (known > 0) {
    for (double& x : v) x /= static_cast<double>(known);
  }
  return v;
}

std::string StaticWordVectors::fingerprint() const {
  return "wordvec:d=" + std::to_string(dimension_) + ":n=" + std::to_string(vectors_.size()) +
         ":hash=" + to_hex(hash_vectors("wordvec", vectors_));
}

// ---------------------------------------------------------------------------
// PrecomputedEncoder

PrecomputedEncoder::PrecomputedEncoder(std::size_t dimension,
                                       std::map<std::string, EmbeddingVector, std::less<>> vectors)
    : dimension_(dimension), vectors_(std::move(vectors)) {
  for (const auto& [text, v] : vectors_) {
    if (v.size() != dimension_) {
      throw Error(ErrorCode::InconsistentDimension, "vector for '" + text + "' has wrong dimension");
    }
  }
}

PrecomputedEncoder PrecomputedEncoder::load(const std::filesystem::path& path) {
  std::map<std::string, EmbeddingVector, std::less<>> vectors;
  std::size_t dimension = 0;
  detail::for_each_record(path, [&](std::size_t line, std::string_view rec) {
    const auto where = detail::location(path, line);
    auto tab = rec.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw Error(ErrorCode::MalformedLine, where + ": expected text<TAB>values");
    }
    auto fields = split_ws(rec.substr(tab + 1));
    if (fields.empty()) throw Error(ErrorCode::MalformedLine, where + ": no values");
    auto values = parse_values(fields, 0, where);
    if (dimension == 0) dimension = values.size();
    if (values.size() != dimension) {
      throw Error(ErrorCode::InconsistentDimension,
                  where + ": expected " + std::to_string(dimension) + " values, got " +
                      std::to_string(values.size()));
    }
    vectors.insert_or_assign(std::string(rec.substr(0, tab)), std::move(values));
  });
  if (dimension == 0) throw Error(ErrorCode::MalformedLine, path.string() + ": no vectors");
  return PrecomputedEncoder(dimension, std::move(vectors));
}

void PrecomputedEncoder::save(const std::filesystem::path& path) const {
  std::string content;
  char buf[32];
  for (const auto& [text, v] : vectors_) {
    if (text.find_first_of("\t\n\r") != std::string::npos) {
      throw Error(ErrorCode::MalformedLine, "text contains a tab or newline: " + text);
    }
    content += text;
    content += '\t';
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) content += ' ';
      std::snprintf(buf, sizeof buf, "%.17g", v[j]);
      content += buf;
    }
    content += '\n';
  }
  detail::write_file(path, content);
}

EmbeddingVector PrecomputedEncoder::embed(std::string_view text) const {
  auto it = vectors_.find(text);
  if (it == vectors_.end()) {
    throw Error(ErrorCode::MissingEmbedding, "no precomputed embedding for '" + std::string(text) + "'");
  }
  return it->second;
}

std::string PrecomputedEncoder::fingerprint() const {
  return "precomputed:d=" + std::to_string(dimension_) + ":n=" + std::to_string(vectors_.size()) +
         ":hash=" + to_hex(hash_vectors("precomputed", vectors_));
}

}  // namespace ontosearch
