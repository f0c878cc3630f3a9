#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ontosearch/encoders.hpp"
#include "ontosearch/tripletgen.hpp"

namespace ontosearch {

struct TrainConfig {
  double margin = 0.1;
  int epochs = 5;
  std::size_t batch_size = 32;
  /// Fine-tuning rate of the transformer setting; the bag-of-subwords
  /// encoder trains well at 1e-3.
  double learning_rate = 2e-5;
  /// Fraction of all optimizer steps over which the rate ramps up from 0.
  double warmup_fraction = 0.10;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;

  /// Throws InvalidConfig.
  void validate() const;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  /// Absent when the dev set is empty.
  std::optional<double> dev_loss;

  bool operator==(const EpochStats&) const = default;
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
  std::size_t steps = 0;
};

/// Mean triplet loss of `rows` under `model`; nullopt for an empty set.
std::optional<double> mean_triplet_loss(const SubwordEmbedder& model,
                                        std::span<const TripletExample> rows, double margin);

/// Mini-batch Adam over the whole embedding table.
///
/// Each epoch shuffles the training rows with a stream seeded from
/// cfg.seed. Per batch the loss is the mean triplet loss; the gradient of a
/// pooled vector reaches each of its feature rows divided by that text's
/// feature count. The learning rate is lr * step / warmup_steps during
/// warm-up and lr afterwards. Returns the final-epoch model state; dev loss is
/// only recorded. Single-threaded and bitwise reproducible for a given seed.
///
/// Throws EmptyDataset when `train_set` is empty.
TrainHistory train(SubwordEmbedder& model, std::span<const TripletExample> train_set,
                   std::span<const TripletExample> dev_set, const TrainConfig& cfg);

}  // namespace ontosearch
