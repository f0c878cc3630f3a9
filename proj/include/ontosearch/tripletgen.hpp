#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ontosearch/ontology.hpp"

namespace ontosearch {

struct TripletExample {
  std::string anchor;
  std::string positive;
  std::string negative;

  bool operator==(const TripletExample&) const = default;
  auto operator<=>(const TripletExample&) const = default;
};

struct TripletDataset {
  std::vector<TripletExample> entries;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  bool operator==(const TripletDataset&) const = default;
};

struct SplitRatios {
  double train = 0.90;
  double dev = 0.05;
  double test = 0.05;

  /// Throws InvalidRatios unless each fraction is in [0, 1] and they sum to 1.
  void validate() const;
};

struct TripletOptions {
  /// Let single-label concepts emit (label, parent label, other label).
  bool single_label_fallback = false;
  /// Drop exact repeats, keeping the first occurrence.
  bool dedup = false;
};

/// Builds (anchor, positive, negative) triplets from the hierarchy.
///
/// Concepts are visited in ascending id order. For every ordered pair of
/// distinct labels (l1, l2) of a concept, one parent label p is drawn
/// uniformly from the labels of all direct parents and one other label o from
/// the labels of siblings and uncles; the pair then emits (l1, l2, p),
/// (l1, l2, o) and (l1, p, o). An emission whose pool is empty is skipped, as
/// is one whose negative equals its positive textually.
///
/// Each concept draws from its own stream seeded by derive_seed(seed, id), so
/// adding unrelated concepts leaves existing triplets untouched. Pools are
/// sorted byte-wise before drawing.
TripletDataset generate_triplets(const OntologyGraph& graph, std::uint64_t seed,
                                 const TripletOptions& options = {});

struct DatasetSplit {
  std::vector<TripletExample> train;
  std::vector<TripletExample> dev;
  std::vector<TripletExample> test;
};

/// Seeded shuffle, then |dev| = floor(N*dev), |test| = floor(N*test) and the
/// remainder goes to train. Order within the shuffled sequence: train, dev,
/// test.
DatasetSplit split_dataset(const TripletDataset& dataset, const SplitRatios& ratios,
                           std::uint64_t seed);

/// `anchor\tpositive\tnegative` per line.
void write_triplets_tsv(const std::filesystem::path& path, const std::vector<TripletExample>& rows);
std::vector<TripletExample> read_triplets_tsv(const std::filesystem::path& path);

}  // namespace ontosearch
