#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ontosearch {

/// Lower-cases ASCII and splits on every non-alphanumeric byte. Bytes >= 0x80
/// are kept inside tokens so UTF-8 words survive intact. No stop-word removal.
std::vector<std::string> tokenize(std::string_view text);

/// Set of lower-cased tokens removed before keyword indexing and overlap
/// computation.
class StopWords {
 public:
  StopWords() = default;
  explicit StopWords(std::set<std::string, std::less<>> words) : words_(std::move(words)) {}

  /// One token per line; blank lines and '#' comments skipped. A line that
  /// does not tokenise to exactly one token is MalformedStopwordFile.
  static StopWords load(const std::filesystem::path& path);

  /// The bundled 30-word English list (same content as data/stopwords_en.txt).
  static StopWords english_default();

  bool contains(std::string_view token) const { return words_.find(token) != words_.end(); }
  bool empty() const noexcept { return words_.empty(); }
  std::size_t size() const noexcept { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const noexcept { return words_; }

  std::vector<std::string> filter(std::vector<std::string> tokens) const;

  /// FNV-1a of the sorted list joined by '\n'.
  std::uint64_t fingerprint() const;

  /// Same format load() accepts.
  void save(const std::filesystem::path& path) const;

  bool operator==(const StopWords&) const = default;

 private:
  std::set<std::string, std::less<>> words_;
};

}  // namespace ontosearch
