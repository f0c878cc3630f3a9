#include <doctest.h>

#include "fixtures.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/ontology.hpp"

using namespace ontosearch;
using testsupport::make_concept;

namespace {

ErrorCode load_error(const testsupport::TempDir& dir, const std::string& concepts,
                     const std::string& labels, const std::string& relations) {
  testsupport::write_text(dir / "c.tsv", concepts);
  testsupport::write_text(dir / "l.tsv", labels);
  testsupport::write_text(dir / "r.tsv", relations);
  try {
    load_ontology({dir / "c.tsv", dir / "l.tsv", dir / "r.tsv"});
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}

}  // namespace

TEST_CASE("single concept without relations") {
  testsupport::TempDir dir;
  testsupport::write_text(dir / "c.tsv", "A\tasthenia\n");
  auto g = load_ontology({dir / "c.tsv", {}, {}});
  CHECK(g.size() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(g.at("A").preferred_label() == "asthenia");
}

TEST_CASE("loader errors") {
  testsupport::TempDir dir;
  CHECK(load_error(dir, "A\ta\nB\tb\n", "", "A\tB\nB\tA\n") == ErrorCode::CycleDetected);
  CHECK(load_error(dir, "A\ta\n", "A\ta\n", "") == ErrorCode::DuplicateLabel);
  CHECK(load_error(dir, "A\ta\n", "Z\tz\n", "") == ErrorCode::UnknownConceptId);
  CHECK(load_error(dir, "A\ta\nA\tb\n", "", "") == ErrorCode::DuplicateConceptId);
  CHECK(load_error(dir, "A\ta\n", "", "A\tQ\n") == ErrorCode::UnknownParentId);
  CHECK(load_error(dir, "A\ta\n", "", "Q\tA\n") == ErrorCode::UnknownConceptId);
  CHECK(load_error(dir, "A\t  \n", "", "") == ErrorCode::EmptyLabel);
  CHECK(load_error(dir, "A\ta\n", "", "A\tA\n") == ErrorCode::CycleDetected);
  CHECK(load_error(dir, "A\n", "", "") == ErrorCode::MalformedLine);
  CHECK(load_error(dir, "# header\nA\ta\r\n\nB\tb\n", "", "B\tA\n") == ErrorCode::Ok);
}

TEST_CASE("cycle message names the path") {
  try {
    OntologyGraph::from_concepts({make_concept("A", {"a"}, {"C"}), make_concept("B", {"b"}, {"A"}),
                                  make_concept("C", {"c"}, {"B"})});
    FAIL("expected a cycle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CycleDetected);
    CHECK(std::string(e.what()).find("->") != std::string::npos);
  }
}

TEST_CASE("save and load round trip") {
  testsupport::TempDir dir;
  const auto g = testsupport::random_ontology(60, 3);
  const OntologyFiles files{dir / "c.tsv", dir / "l.tsv", dir / "r.tsv"};
  save_ontology(g, files);
  CHECK(load_ontology(files) == g);
}

TEST_CASE("siblings and uncles on the fatigue fragment") {
  const auto g = testsupport::figure1_graph();
  CHECK(get_siblings(g, "C4") == std::vector<ConceptId>{"C5"});
  CHECK(get_siblings(g, "C1").empty());
  CHECK(g.uncles("C4") == std::vector<ConceptId>{"C3"});
  CHECK(g.children("C2") == std::vector<ConceptId>{"C4", "C5"});
}

TEST_CASE("siblings union over several parents") {
  const auto g = OntologyGraph::from_concepts({
      make_concept("P1", {"p1"}), make_concept("P2", {"p2"}), make_concept("A", {"a"}, {"P1", "P2"}),
      make_concept("X", {"x"}, {"P1"}), make_concept("Y", {"y"}, {"P2"})});
  CHECK(get_siblings(g, "A") == std::vector<ConceptId>{"X", "Y"});
  CHECK(get_siblings(g, "X") == std::vector<ConceptId>{"A"});
}

TEST_CASE("uncles exclude own parents") {
  // A has parents P and Q, where Q is also a child of G like P.
  const auto g = OntologyGraph::from_concepts({make_concept("G", {"g"}), make_concept("P", {"p"}, {"G"}),
                                               make_concept("Q", {"q"}, {"G"}),
                                               make_concept("U", {"u"}, {"G"}),
                                               make_concept("A", {"a"}, {"P", "Q"})});
  CHECK(g.uncles("A") == std::vector<ConceptId>{"U"});
}

TEST_CASE("relation kinds and gains") {
  const auto g = testsupport::figure1_graph();
  CHECK(relation_between(g, "C4", "C4") == RelationKind::Same);
  CHECK(relation_between(g, "C2", "C4") == RelationKind::ParentOfTruth);
  CHECK(relation_between(g, "C4", "C2") == RelationKind::ChildOfTruth);
  CHECK(relation_between(g, "C1", "C4") == RelationKind::GrandParentOfTruth);
  CHECK(relation_between(g, "C4", "C1") == RelationKind::GrandChildOfTruth);
  CHECK(relation_between(g, "C3", "C4") == RelationKind::UncleOfTruth);
  CHECK(relation_between(g, "C5", "C4") == RelationKind::SiblingOfTruth);
  CHECK(relation_between(g, "C4", "C3") == RelationKind::Other);
  CHECK_THROWS_AS(relation_between(g, "nope", "C4"), Error);

  const auto disjoint = OntologyGraph::from_concepts(
      {make_concept("R1", {"r1"}), make_concept("R2", {"r2"}), make_concept("A", {"a"}, {"R1"}),
       make_concept("B", {"b"}, {"R2"})});
  CHECK(relation_between(disjoint, "A", "B") == RelationKind::Other);

  CHECK(gain_of_relation(RelationKind::Same) == 3);
  CHECK(gain_of_relation(RelationKind::ParentOfTruth) == 2);
  CHECK(gain_of_relation(RelationKind::ChildOfTruth) == 2);
  CHECK(gain_of_relation(RelationKind::GrandParentOfTruth) == 1);
  CHECK(gain_of_relation(RelationKind::GrandChildOfTruth) == 1);
  CHECK(gain_of_relation(RelationKind::UncleOfTruth) == 1);
  CHECK(gain_of_relation(RelationKind::SiblingOfTruth) == 1);
  CHECK(gain_of_relation(RelationKind::Other) == 0);
}
