#include <doctest.h>

#include <algorithm>
#include <map>

#include "figure1_oracle.hpp"
#include "fixtures.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/random.hpp"
#include "ontosearch/tripletgen.hpp"

using namespace ontosearch;
using testsupport::make_concept;

namespace {

using testsupport::hand_execute;
using Triplets = std::vector<TripletExample>;

Triplets of_anchor_concept(const Triplets& all, const std::vector<std::string>& labels) {
  Triplets out;
  for (const auto& t : all) {
    if (std::find(labels.begin(), labels.end(), t.anchor) != labels.end()) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("fatigue fragment matches the hand execution for many seeds") {
  const auto g = testsupport::figure1_graph();
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    CHECK(generate_triplets(g, seed).entries == hand_execute(seed, false));
    CHECK(generate_triplets(g, seed, {.single_label_fallback = true}).entries ==
          hand_execute(seed, true));
  }
}

TEST_CASE("asthenia emits six entries and the fatigue concept is fully determined") {
  const auto g = testsupport::figure1_graph();
  const auto ds = generate_triplets(g, 7);
  CHECK(of_anchor_concept(ds.entries, {"Asthenia", "Lassitude"}).size() == 6);
  const Triplets fatigue = {
      {"Fatigue", "Weariness", "Energy and stamina finding"},
      {"Fatigue", "Weariness", "Exhaustion"},
      {"Fatigue", "Energy and stamina finding", "Exhaustion"},
      {"Weariness", "Fatigue", "Energy and stamina finding"},
      {"Weariness", "Fatigue", "Exhaustion"},
      {"Weariness", "Energy and stamina finding", "Exhaustion"},
  };
  CHECK(of_anchor_concept(ds.entries, {"Fatigue", "Weariness"}) == fatigue);
  CHECK(ds.size() == 12);
}

TEST_CASE("a seed drawing Fatigue then Exhaustion gives the worked triplets") {
  const auto g = testsupport::figure1_graph();
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    Rng rng(derive_seed(seed, "C4"));
    if (rng.uniform_index(2) != 0 || rng.uniform_index(2) != 0) continue;
    found = true;
    const auto asthenia = of_anchor_concept(generate_triplets(g, seed).entries, {"Asthenia", "Lassitude"});
    REQUIRE(asthenia.size() == 6);
    CHECK(asthenia[0] == TripletExample{"Asthenia", "Lassitude", "Fatigue"});
    CHECK(asthenia[1] == TripletExample{"Asthenia", "Lassitude", "Exhaustion"});
    CHECK(asthenia[2] == TripletExample{"Asthenia", "Fatigue", "Exhaustion"});
  }
  CHECK(found);
}

TEST_CASE("n labels with non-empty pools give 3 n (n - 1) entries") {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("label " + std::to_string(i));
    const auto g = OntologyGraph::from_concepts({make_concept("P", {"parent"}),
                                                 make_concept("S", {"sibling"}, {"P"}),
                                                 make_concept("X", labels, {"P"})});
    const auto ds = generate_triplets(g, 1);
    CHECK(of_anchor_concept(ds.entries, labels).size() == 3 * n * (n - 1));
  }
}

TEST_CASE("single-label concepts and empty graphs") {
  const auto g = OntologyGraph::from_concepts(
      {make_concept("P", {"parent"}), make_concept("S", {"sibling"}, {"P"}), make_concept("X", {"x"}, {"P"})});
  CHECK(generate_triplets(g, 3).empty());
  const auto fb = generate_triplets(g, 3, {.single_label_fallback = true});
  CHECK(fb.entries == Triplets{{"sibling", "parent", "x"}, {"x", "parent", "sibling"}});
  CHECK(generate_triplets(OntologyGraph::from_concepts({}), 3).empty());
}

TEST_CASE("empty pools skip their emissions individually") {
  // Root with two labels: no parent pool, no others.
  const auto root_only = OntologyGraph::from_concepts({make_concept("R", {"a", "b"})});
  CHECK(generate_triplets(root_only, 0).empty());
  // Only child: parent pool but no others -> just (l1, l2, p).
  const auto only_child =
      OntologyGraph::from_concepts({make_concept("R", {"root"}), make_concept("X", {"a", "b"}, {"R"})});
  CHECK(generate_triplets(only_child, 0).entries == Triplets{{"a", "b", "root"}, {"b", "a", "root"}});
}

TEST_CASE("adding an unrelated concept leaves existing triplets unchanged") {
  const auto base = testsupport::random_ontology(40, 11);
  std::vector<Concept> grown;
  for (const auto& [id, c] : base.concepts()) grown.push_back(c);
  grown.push_back(make_concept("Z9", {"zeta one", "zeta two"}));
  grown.push_back(make_concept("Z9a", {"zeta child", "zeta kid"}, {"Z9"}));
  const auto a = generate_triplets(base, 5).entries;
  auto b = generate_triplets(OntologyGraph::from_concepts(grown), 5).entries;
  std::erase_if(b, [](const TripletExample& t) { return t.anchor.rfind("zeta", 0) == 0; });
  CHECK(a == b);
}

TEST_CASE("dedup keeps first occurrences") {
  // Two labels, single parent label and single other label: (a, p, o) is
  // emitted once per pair anchor, (l1, l2, *) never repeats, so build a
  // repeat with three labels sharing the same anchor.
  const auto g = OntologyGraph::from_concepts({make_concept("P", {"p"}), make_concept("S", {"s"}, {"P"}),
                                               make_concept("X", {"a", "b", "c"}, {"P"})});
  const auto plain = generate_triplets(g, 0).entries;
  const auto deduped = generate_triplets(g, 0, {.dedup = true}).entries;
  CHECK(deduped.size() < plain.size());
  Triplets expected;
  for (const auto& t : plain) {
    if (std::find(expected.begin(), expected.end(), t) == expected.end()) expected.push_back(t);
  }
  CHECK(deduped == expected);
}

TEST_CASE("split sizes, determinism and partition") {
  TripletDataset ds;
  for (int i = 0; i < 100; ++i) ds.entries.push_back({"a" + std::to_string(i), "p", "n"});
  const auto s = split_dataset(ds, {}, 9);
  CHECK(s.train.size() == 90);
  CHECK(s.dev.size() == 5);
  CHECK(s.test.size() == 5);
  const auto again = split_dataset(ds, {}, 9);
  CHECK(again.train == s.train);
  CHECK(again.dev == s.dev);
  CHECK(again.test == s.test);
  CHECK(split_dataset(ds, {}, 10).train != s.train);

  Triplets all = s.train;
  all.insert(all.end(), s.dev.begin(), s.dev.end());
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  auto sorted = ds.entries;
  std::sort(sorted.begin(), sorted.end());
  CHECK(all == sorted);

  const auto empty = split_dataset(TripletDataset{}, {}, 1);
  CHECK(empty.train.empty());
  CHECK(empty.dev.empty());
  CHECK(empty.test.empty());

  TripletDataset seven;
  for (int i = 0; i < 7; ++i) seven.entries.push_back({std::to_string(i), "p", "n"});
  const auto small = split_dataset(seven, {0.5, 0.25, 0.25}, 1);
  CHECK(small.dev.size() == 1);
  CHECK(small.test.size() == 1);
  CHECK(small.train.size() == 5);
}

TEST_CASE("invalid ratios") {
  CHECK_THROWS_AS(SplitRatios({0.8, 0.1, 0.05}).validate(), Error);
  CHECK_THROWS_AS(SplitRatios({1.2, -0.1, -0.1}).validate(), Error);
  try {
    split_dataset(TripletDataset{}, {0.5, 0.5, 0.5}, 0);
    FAIL("expected InvalidRatios");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidRatios);
  }
}

TEST_CASE("triplet TSV round trip") {
  testsupport::TempDir dir;
  const auto ds = generate_triplets(testsupport::random_ontology(30, 2), 4);
  write_triplets_tsv(dir / "t.tsv", ds.entries);
  CHECK(read_triplets_tsv(dir / "t.tsv") == ds.entries);
  testsupport::write_text(dir / "bad.tsv", "a\tb\n");
  CHECK_THROWS_AS(read_triplets_tsv(dir / "bad.tsv"), Error);
}
