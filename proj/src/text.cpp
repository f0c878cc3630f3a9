#include "ontosearch/text.hpp"

#include <algorithm>

#include "io_util.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/hashing.hpp"

namespace ontosearch {

namespace {

bool is_token_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

constexpr std::string_view kDefaultEnglish[] = {
    "a",    "an",   "and",  "are",   "as",    "at",   "be",    "by",   "for",  "if",
    "in",   "into", "is",   "it",    "of",    "on",   "or",    "such", "that", "the",
    "their", "then", "there", "these", "they", "this", "to",   "was",  "will", "with",
};

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_token_byte(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

StopWords StopWords::load(const std::filesystem::path& path) {
  std::set<std::string, std::less<>> words;
  detail::for_each_record(path, [&](std::size_t line, std::string_view record) {
    auto trimmed = detail::trim(record);
    if (trimmed.empty()) return;
    auto tokens = tokenize(trimmed);
    if (tokens.size() != 1 || tokens.front().size() != trimmed.size()) {
      throw Error(ErrorCode::MalformedStopwordFile,
                  detail::location(path, line) + ": expected a single token, got '" +
                      std::string(trimmed) + "'");
    }
    words.insert(std::move(tokens.front()));
  });
  return StopWords(std::move(words));
}

StopWords StopWords::english_default() {
  std::set<std::string, std::less<>> words;
  for (auto w : kDefaultEnglish) words.emplace(w);
  return StopWords(std::move(words));
}

std::vector<std::string> StopWords::filter(std::vector<std::string> tokens) const {
  if (words_.empty()) return tokens;
  std::erase_if(tokens, [&](const std::string& t) { return contains(t); });
  return tokens;
}

std::uint64_t StopWords::fingerprint() const {
  std::string joined;
  for (const auto& w : words_) {
    joined += w;
    joined += '\n';
  }
  return fnv1a64(joined);
}

void StopWords::save(const std::filesystem::path& path) const {
  std::string content;
  for (const auto& w : words_) {
    content += w;
    content += '\n';
  }
  detail::write_file(path, content);
}

}  // namespace ontosearch
