#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ontosearch_cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Defaults for every subcommand. Command-line flags override these.
struct PipelineConfig {
  struct Ontology {
    std::string concepts;
    std::string labels;
    std::string relations;

    bool operator==(const Ontology&) const = default;
  } ontology;

  struct Triplets {
    std::uint64_t seed = 0;
    bool single_label_fallback = false;
    bool dedup = false;
    double train = 0.90;
    double dev = 0.05;
    double test = 0.05;

    bool operator==(const Triplets&) const = default;
  } triplets;

  struct Train {
    std::size_t dim = 64;
    std::size_t buckets = std::size_t{1} << 16;
    std::uint64_t model_seed = 0;
    int epochs = 5;
    std::size_t batch = 32;
    double lr = 2e-5;
    double margin = 0.1;
    double warmup = 0.1;
    std::uint64_t seed = 0;

    bool operator==(const Train&) const = default;
  } train;

  struct Index {
    std::string stopwords;
    std::string word_vectors;
    std::string precomputed;
    double k1 = 1.2;
    double b = 0.75;

    bool operator==(const Index&) const = default;
  } index;

  struct Search {
    std::size_t k = 10;
    std::string ranker = "vector";

    bool operator==(const Search&) const = default;
  } search;

  struct Serve {
    std::string bind = "127.0.0.1:8080";

    bool operator==(const Serve&) const = default;
  } serve;

  std::string out;

  bool operator==(const PipelineConfig&) const = default;
};

// Flat "section.key = value" lines; '#' starts a comment line. Unknown keys
// and unparsable values throw ConfigError.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

// Every key, in a fixed order, in the form parse_config reads back.
std::string serialize_config(const PipelineConfig& config);

}  // namespace ontosearch_cli
