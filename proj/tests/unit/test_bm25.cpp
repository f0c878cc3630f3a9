#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ontosearch/bm25.hpp"
#include "ontosearch/error.hpp"

using namespace ontosearch;
using testsupport::make_concept;
using Tokens = std::vector<std::string>;

namespace {

OntologyGraph three_docs() {
  return OntologyGraph::from_concepts({make_concept("D1", {"headache head pain"}),
                                       make_concept("D2", {"vomiting"}),
                                       make_concept("D3", {"injury of muscle"})});
}

StopWords only_of() { return StopWords({"of"}); }

}  // namespace

TEST_CASE("worked example without stop words") {
  const auto index = Bm25Index::build(three_docs(), StopWords{});
  CHECK(index.average_length() == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  const double expected = testsupport::bm25_by_hand(
      {"headache"}, {{"headache", "head", "pain"}, {"vomiting"}, {"injury", "of", "muscle"}}, 0);
  const double got = bm25_score(index, Tokens{"headache"}, "D1");
  CHECK(std::abs(got - expected) < 1e-9);
  CHECK(got == doctest::Approx(0.8782).epsilon(1e-4));
}

TEST_CASE("worked example with 'of' as a stop word") {
  const auto index = Bm25Index::build(three_docs(), only_of());
  CHECK(index.average_length() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(index.document("D3").length == 2);
  const double expected = testsupport::bm25_by_hand(
      {"headache"}, {{"headache", "head", "pain"}, {"vomiting"}, {"injury", "muscle"}}, 0);
  CHECK(std::abs(bm25_score(index, Tokens{"headache"}, "D1") - expected) < 1e-9);
}

TEST_CASE("absent terms and stop-word queries score zero") {
  const auto index = Bm25Index::build(three_docs(), only_of());
  CHECK(bm25_score(index, Tokens{"vomiting"}, "D1") == 0.0);
  CHECK(bm25_score(index, Tokens{"zzz", "yyy"}, "D1") == 0.0);
  CHECK(bm25_score(index, Tokens{"of"}, "D3") == 0.0);
  CHECK(bm25_search(index, "of", 5).empty());
  CHECK_THROWS_AS(bm25_score(index, Tokens{"x"}, "D9"), Error);
}

TEST_CASE("stop-word-only labels contribute nothing") {
  const auto g = OntologyGraph::from_concepts({make_concept("A", {"the of", "pain"}), make_concept("B", {"rash"})});
  const auto index = Bm25Index::build(g, StopWords::english_default());
  CHECK(index.document("A").length == 1);
  CHECK(index.average_length() == 1.0);
  CHECK(index.doc_freq("the") == 0);
}

TEST_CASE("search: full overlap wins, zero overlap absent, ties by id") {
  const auto g = OntologyGraph::from_concepts({make_concept("M1", {"Macrodontia"}),
                                               make_concept("P1", {"Tooth pain"}),
                                               make_concept("P2", {"Mass lesion"}),
                                               make_concept("Z1", {"mass"}),
                                               make_concept("Z0", {"mass"}, {})});
  const auto index = Bm25Index::build(g, StopWords::english_default());
  const auto tooth = bm25_search(index, "tooth pain", 10);
  REQUIRE(!tooth.empty());
  CHECK(tooth[0].concept_id == "P1");
  for (const auto& h : bm25_search(index, "tooth mass excess", 10)) CHECK(h.concept_id != "M1");
  const auto mass = bm25_search(index, "mass", 10);
  REQUIRE(mass.size() == 3);
  CHECK(mass[0].concept_id == "Z0");
  CHECK(mass[1].concept_id == "Z1");
  CHECK(mass[0].score == mass[1].score);
  CHECK(mass[2].concept_id == "P2");
  CHECK(mass[2].best_label == "Mass lesion");
}

TEST_CASE("concept queries take the max over labels") {
  const auto g = OntologyGraph::from_concepts(
      {make_concept("A", {"head pain"}), make_concept("B", {"skin rash"}), make_concept("C", {"fever"})});
  const auto index = Bm25Index::build(g, StopWords{});
  const Tokens labels = {"head", "skin rash"};
  const auto hits = bm25_search_concept(index, labels, 5);
  REQUIRE(hits.size() == 2);
  const double a = bm25_score(index, Tokens{"head"}, "A");
  const double b = bm25_score(index, Tokens{"skin", "rash"}, "B");
  CHECK(hits[0].score == std::max(a, b));
  CHECK_THROWS_AS(bm25_search_concept(index, Tokens{}, 5), Error);
}

TEST_CASE("randomized corpora: IDF decreases with df, scores monotone in query terms") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = testsupport::random_ontology(80, seed);
    const auto index = Bm25Index::build(g, StopWords::english_default());

    std::vector<std::pair<std::size_t, double>> df_idf;
    for (const auto& doc : index.documents()) {
      for (const auto& [term, tf] : doc.term_freqs) df_idf.emplace_back(index.doc_freq(term), index.idf(term));
    }
    for (const auto& [df1, idf1] : df_idf) {
      for (const auto& [df2, idf2] : df_idf) {
        if (df1 < df2) CHECK(idf1 > idf2);
      }
    }

    const Tokens base = {"pain"};
    const Tokens more = {"pain", "head"};
    for (const auto& doc : index.documents()) {
      CHECK(bm25_score(index, more, doc.concept_id) >= bm25_score(index, base, doc.concept_id));
    }

    // Same length, higher tf -> higher score.
    for (const auto& d1 : index.documents()) {
      for (const auto& d2 : index.documents()) {
        if (d1.length != d2.length) continue;
        auto tf = [](const Bm25Document& d) {
          auto it = d.term_freqs.find("pain");
          return it == d.term_freqs.end() ? 0u : it->second;
        };
        if (tf(d1) > tf(d2)) {
          CHECK(bm25_score(index, base, d1.concept_id) > bm25_score(index, base, d2.concept_id));
        }
      }
    }
  }
}

TEST_CASE("BM25 index persistence") {
  testsupport::TempDir dir;
  const auto g = testsupport::random_ontology(50, 4);
  const auto index = Bm25Index::build(g, StopWords::english_default(), {1.5, 0.5});
  index.save(dir / "b.idx");
  const auto back = Bm25Index::load(dir / "b.idx");
  CHECK(back == index);
  CHECK(bm25_search(back, "acute pain", 10) == bm25_search(index, "acute pain", 10));
  testsupport::write_text(dir / "junk.idx", "nope");
  CHECK_THROWS_AS(Bm25Index::load(dir / "junk.idx"), Error);

  testsupport::write_text(dir / "sw.txt", "");
  const auto no_sw = build_bm25_index(g, dir / "sw.txt");
  CHECK(no_sw.stopwords().empty());
  CHECK(build_bm25_index(g, {}).stopwords().empty());
}
