#pragma once

#include <span>
#include <vector>

namespace ontosearch {

/// Fixed-dimension text representation. All entries finite.
using EmbeddingVector = std::vector<double>;

/// Distances below this are treated as zero (no gradient, no cosine).
inline constexpr double kNormEpsilon = 1e-12;

/// Sequential left-to-right sum; every score in the project goes through it
/// so rankings are reproducible.
double dot(std::span<const double> u, std::span<const double> v);
double l2_norm(std::span<const double> v);
double euclidean_distance(std::span<const double> u, std::span<const double> v);

/// Scales to unit length in place; vectors with norm < kNormEpsilon become zero.
void normalize(std::span<double> v);

/// u.v / (|u||v|), or 0 when either norm is below kNormEpsilon.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// max(|a - p| - |a - n| + margin, 0) with Euclidean norms.
double triplet_loss(std::span<const double> anchor, std::span<const double> positive,
                    std::span<const double> negative, double margin);

struct TripletGradients {
  EmbeddingVector anchor;
  EmbeddingVector positive;
  EmbeddingVector negative;
};

/// Gradients of triplet_loss. All zero when the loss is zero; a distance
/// below kNormEpsilon contributes nothing.
TripletGradients triplet_loss_gradients(std::span<const double> anchor,
                                        std::span<const double> positive,
                                        std::span<const double> negative, double margin);

}  // namespace ontosearch
