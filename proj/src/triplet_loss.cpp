#include "ontosearch/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ontosearch/error.hpp"

namespace ontosearch {

namespace {

void require_same(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

double dot(std::span<const double> u, std::span<const double> v) {
  require_same(u.size(), v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
  require_same(u.size(), v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double d = u[i] - v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void normalize(std::span<double> v) {
  double n = l2_norm(v);
  if (n < kNormEpsilon) {
    std::fill(v.begin(), v.end(), 0.0);
    return;
  }
  for (double& x : v) x /= n;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  require_same(u.size(), v.size());
  double nu = l2_norm(u);
  double nv = l2_norm(v);
  if (nu < kNormEpsilon || nv < kNormEpsilon) return 0.0;
  return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

double triplet_loss(std::span<const double> anchor, std::span<const double> positive,
                    std::span<const double> negative, double margin) {
  require_same(anchor.size(), positive.size());
  require_same(anchor.size(), negative.size());
  double d_pos = euclidean_distance(anchor, positive);
  double d_neg = euclidean_distance(anchor, negative);
  return std::max(d_pos - d_neg + margin, 0.0);
}

TripletGradients triplet_loss_gradients(std::span<const double> anchor,
                                        std::span<const double> positive,
                                        std::span<const double> negative, double margin) {
  const std::size_t d = anchor.size();
  TripletGradients g{EmbeddingVector(d, 0.0), EmbeddingVector(d, 0.0), EmbeddingVector(d, 0.0)};
  if (triplet_loss(anchor, positive, negative, margin) <= 0.0) return g;

  double d_pos = euclidean_distance(anchor, positive);
  double d_neg = euclidean_distance(anchor, negative);
  // d|a-p|/dp = -(a-p)/|a-p|; the negative distance enters with a minus sign.
  if (d_pos >= kNormEpsilon) {
    for (std::size_t i = 0; i < d; ++i) g.positive[i] = -(anchor[i] - positive[i]) / d_pos;
  }
  if (d_neg >= kNormEpsilon) {
    for (std::size_t i = 0; i < d; ++i) g.negative[i] = (anchor[i] - negative[i]) / d_neg;
  }
  for (std::size_t i = 0; i < d; ++i) g.anchor[i] = -g.positive[i] - g.negative[i];
  return g;
}

}  // namespace ontosearch
