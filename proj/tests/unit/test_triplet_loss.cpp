#include <doctest.h>

#include <cmath>

#include "ontosearch/embedding.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/random.hpp"

using namespace ontosearch;
using V = EmbeddingVector;

TEST_CASE("triplet loss values") {
  CHECK(triplet_loss(V{0, 0}, V{0, 0}, V{1, 0}, 0.1) == 0.0);
  CHECK(triplet_loss(V{0, 0}, V{1, 0}, V{0.5, 0}, 0.1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(triplet_loss(V{1, 1}, V{1, 1.3}, V{1, 1}, 0.1) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("gradients vanish when the margin holds") {
  const auto g = triplet_loss_gradients(V{0, 0}, V{0, 0.1}, V{3, 0}, 0.1);
  CHECK(g.anchor == V{0, 0});
  CHECK(g.positive == V{0, 0});
  CHECK(g.negative == V{0, 0});
}

TEST_CASE("coincident anchor and positive") {
  // d(a,p) = 0 contributes nothing; the negative term is -(a - n)/|a - n|
  // for the anchor and +(a - n)/|a - n| for the negative.
  const auto g = triplet_loss_gradients(V{1, 2}, V{1, 2}, V{1.03, 2.04}, 0.1);
  CHECK(g.positive == V{0, 0});
  CHECK(g.anchor[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(g.anchor[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(g.negative[0] == doctest::Approx(-0.6).epsilon(1e-12));
  CHECK(g.negative[1] == doctest::Approx(-0.8).epsilon(1e-12));
}

TEST_CASE("gradients against central differences") {
  Rng rng(42);
  constexpr std::size_t d = 8;
  constexpr double h = 1e-4;
  int checked = 0;
  double worst = 0.0;
  while (checked < 100) {
    V a(d), p(d), n(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = rng.uniform(-1, 1);
      p[i] = rng.uniform(-1, 1);
      n[i] = rng.uniform(-1, 1);
    }
    const double margin = 0.5;
    if (triplet_loss(a, p, n, margin) <= 1e-3 || euclidean_distance(a, p) < 1e-3 ||
        euclidean_distance(a, n) < 1e-3) {
      continue;
    }
    const auto g = triplet_loss_gradients(a, p, n, margin);
    V* args[] = {&a, &p, &n};
    const V* grads[] = {&g.anchor, &g.positive, &g.negative};
    for (int which = 0; which < 3; ++which) {
      for (std::size_t i = 0; i < d; ++i) {
        V& x = *args[which];
        const double saved = x[i];
        x[i] = saved + h;
        const double up = triplet_loss(a, p, n, margin);
        x[i] = saved - h;
        const double down = triplet_loss(a, p, n, margin);
        x[i] = saved;
        const double numeric = (up - down) / (2 * h);
        const double analytic = (*grads[which])[i];
        const double rel = std::abs(numeric - analytic) / std::max(1e-8, std::abs(numeric) + std::abs(analytic));
        worst = std::max(worst, rel);
      }
    }
    ++checked;
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("vector helpers") {
  CHECK(cosine_similarity(V{1, 0}, V{0, 1}) == 0.0);
  CHECK(cosine_similarity(V{2, 0}, V{1, 0}) == doctest::Approx(1.0));
  CHECK(cosine_similarity(V{0, 0}, V{1, 0}) == 0.0);
  CHECK(cosine_similarity(V{1, 1}, V{-1, -1}) == doctest::Approx(-1.0));
  V u{3, 4};
  normalize(u);
  CHECK(u == V{0.6, 0.8});
  V z{0, 0};
  normalize(z);
  CHECK(z == V{0, 0});
  CHECK(euclidean_distance(V{0, 0}, V{3, 4}) == 5.0);
  CHECK_THROWS_AS(triplet_loss_gradients(V{1}, V{1, 2}, V{1, 2}, 0.1), Error);
}
