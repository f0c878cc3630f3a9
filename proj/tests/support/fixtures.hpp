#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "ontosearch/ontology.hpp"
#include "ontosearch/random.hpp"
#include "tempdir.hpp"

namespace testsupport {

namespace fs = std::filesystem;

inline ontosearch::Concept make_concept(std::string id, std::vector<std::string> labels,
                                        std::vector<std::string> parents = {}) {
  return ontosearch::Concept{std::move(id), std::move(labels), std::move(parents)};
}

// The fatigue fragment:
//   C1 Energy and stamina finding
//   ├── C2 Fatigue | Weariness
//   │   ├── C4 Asthenia | Lassitude
//   │   └── C5 Feeling tired
//   └── C3 Exhaustion
inline ontosearch::OntologyGraph figure1_graph() {
  return ontosearch::OntologyGraph::from_concepts({
      make_concept("C1", {"Energy and stamina finding"}),
      make_concept("C2", {"Fatigue", "Weariness"}, {"C1"}),
      make_concept("C3", {"Exhaustion"}, {"C1"}),
      make_concept("C4", {"Asthenia", "Lassitude"}, {"C2"}),
      make_concept("C5", {"Feeling tired"}, {"C2"}),
  });
}

inline fs::path figure1_dir() { return fs::path(ONTOSEARCH_FIXTURE_DIR) / "figure1"; }

// Lower-case pseudo-word of `len` letters.
inline std::string random_word(ontosearch::Rng& rng, std::size_t len) {
  std::string w;
  for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng.uniform_index(26));
  return w;
}

// n concepts in a ternary tree (parent of i is (i - 1) / 3), each with
// `labels_per` labels of `tokens_per_label` tokens. Every token is used
// exactly once in the whole ontology, so no two labels share a token.
inline ontosearch::OntologyGraph disjoint_label_ontology(std::size_t n, std::size_t labels_per,
                                                         std::size_t tokens_per_label,
                                                         std::uint64_t seed) {
  ontosearch::Rng rng(seed);
  std::set<std::string> used;
  auto fresh = [&] {
    for (;;) {
      std::string w = random_word(rng, 5 + rng.uniform_index(4));
      if (used.insert(w).second) return w;
    }
  };
  auto id_of = [](std::size_t i) {
    std::string s = std::to_string(i);
    return "S" + std::string(4 - s.size(), '0') + s;
  };
  std::vector<ontosearch::Concept> concepts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> labels;
    for (std::size_t l = 0; l < labels_per; ++l) {
      std::string label;
      for (std::size_t t = 0; t < tokens_per_label; ++t) label += (t ? " " : "") + fresh();
      labels.push_back(label);
    }
    std::vector<std::string> parents;
    if (i > 0) parents.push_back(id_of((i - 1) / 3));
    concepts.push_back(make_concept(id_of(i), std::move(labels), std::move(parents)));
  }
  return ontosearch::OntologyGraph::from_concepts(std::move(concepts));
}

// Random forest over a small shared vocabulary, so labels overlap.
inline ontosearch::OntologyGraph random_ontology(std::size_t n, std::uint64_t seed) {
  static const char* vocab[] = {"pain",   "head",  "acute", "chronic", "left",  "right", "fracture",
                                "skin",   "rash",  "fever", "lung",    "heart", "the",   "of",
                                "muscle", "bone",  "nerve", "upper",   "lower", "swelling"};
  ontosearch::Rng rng(seed);
  std::vector<ontosearch::Concept> concepts;
  std::set<std::string> all_labels;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "R" + std::to_string(1000 + i);
    std::vector<std::string> labels;
    const std::size_t n_labels = 1 + rng.uniform_index(3);
    while (labels.size() < n_labels) {
      std::string label;
      const std::size_t n_tok = 1 + rng.uniform_index(4);
      for (std::size_t t = 0; t < n_tok; ++t) label += (t ? " " : "") + std::string(vocab[rng.uniform_index(20)]);
      label += " " + std::to_string(i) + "x" + std::to_string(labels.size());
      if (all_labels.insert(label).second) labels.push_back(label);
    }
    std::vector<std::string> parents;
    if (i > 0 && rng.uniform01() < 0.85) {
      parents.push_back("R" + std::to_string(1000 + rng.uniform_index(i)));
      if (i > 2 && rng.uniform01() < 0.15) {
        parents.push_back("R" + std::to_string(1000 + rng.uniform_index(i)));
      }
    }
    concepts.push_back(make_concept(id, std::move(labels), std::move(parents)));
  }
  return ontosearch::OntologyGraph::from_concepts(std::move(concepts));
}

}  // namespace testsupport
