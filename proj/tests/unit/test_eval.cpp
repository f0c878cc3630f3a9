#include <doctest.h>

#include <cmath>
#include <map>

#include <json.hpp>

#include "fixtures.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/eval.hpp"

using namespace ontosearch;
using testsupport::make_concept;
using Ids = std::vector<ConceptId>;

namespace {

std::vector<RankedHit> ranked(const Ids& ids) {
  std::vector<RankedHit> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.push_back({ids[i], ids[i], 1.0 - 0.01 * static_cast<double>(i), i + 1});
  }
  return out;
}

// Returns canned result lists keyed by query text (or first label).
class CannedRanker final : public Ranker {
 public:
  explicit CannedRanker(std::map<std::string, Ids> results) : results_(std::move(results)) {}
  std::vector<RankedHit> search_text(std::string_view q, std::size_t k) const override {
    auto hits = ranked(results_.at(std::string(q)));
    if (hits.size() > k) hits.resize(k);
    return hits;
  }
  std::vector<RankedHit> search_concept(std::span<const std::string> labels, std::size_t k) const override {
    return search_text(labels.front(), k);
  }

 private:
  std::map<std::string, Ids> results_;
};

// Padding concepts so result lists can be long.
OntologyGraph numbered_graph(std::size_t n) {
  std::vector<Concept> cs;
  for (std::size_t i = 0; i < n; ++i) cs.push_back(make_concept("N" + std::to_string(i), {"n" + std::to_string(i)}));
  return OntologyGraph::from_concepts(std::move(cs));
}

// Ids with the relevant concept "T" at 1-based `rank`.
Ids with_truth_at(std::size_t rank, std::size_t length = 10) {
  Ids ids;
  for (std::size_t i = 1; i <= length; ++i) ids.push_back(i == rank ? "T" : "N" + std::to_string(i));
  return ids;
}

}  // namespace

TEST_CASE("Hits@K") {
  const Ids truth = {"T"};
  CHECK(hits_at_k(ranked(with_truth_at(1)), truth, 1) == 1);
  CHECK(hits_at_k(ranked(with_truth_at(7)), truth, 5) == 0);
  const Ids two = {"A", "T"};
  CHECK(hits_at_k(ranked(with_truth_at(4)), two, 5) == 1);
  CHECK(hits_at_k(ranked({}), truth, 5) == 0);
}

TEST_CASE("reciprocal rank") {
  const Ids truth = {"T"};
  CHECK(mrr(ranked(with_truth_at(1)), truth) == 1.0);
  CHECK(mrr(ranked(with_truth_at(2)), truth) == 0.5);
  CHECK(mrr(ranked(with_truth_at(5)), truth) == 0.2);
  CHECK(std::abs(mrr(ranked(with_truth_at(7)), truth) - 1.0 / 7.0) < 1e-12);
  CHECK(mrr(ranked(with_truth_at(0)), truth) == 0.0);
}

TEST_CASE("nDCG from gains") {
  const std::vector<int> example = {3, 1, 2, 1, 1};
  // Hand computation with log2 discounts.
  const double dcg = 3 + 1 / std::log2(3.0) + 2 / 2.0 + 1 / std::log2(5.0) + 1 / std::log2(6.0);
  const double idcg = 3 + 2 / std::log2(3.0) + 1 / 2.0 + 1 / std::log2(5.0) + 1 / std::log2(6.0);
  CHECK(ndcg_from_gains(example, 5) == doctest::Approx(dcg / idcg).epsilon(1e-14));
  CHECK(std::abs(ndcg_from_gains(example, 5) - 0.9765) < 0.0005);
  CHECK(ndcg_from_gains(std::vector<int>{3, 2, 1, 1, 0}, 5) == 1.0);
  CHECK(ndcg_from_gains(std::vector<int>{0, 0, 0}, 3) == 0.0);
  // The ideal order is taken over the first k gains only.
  CHECK(ndcg_from_gains(std::vector<int>{1, 3}, 1) == 1.0);
  CHECK(ndcg_from_gains(std::vector<int>{1, 3}, 2) == doctest::Approx((1 + 3 / std::log2(3.0)) / (3 + 1 / std::log2(3.0))));
}

TEST_CASE("nDCG from ontology relations") {
  const auto g = testsupport::figure1_graph();
  // Truth Asthenia; results Asthenia, Feeling tired (sibling), Fatigue
  // (parent), Exhaustion (uncle), Energy (grandparent): gains 3,1,2,1,1.
  const auto results = ranked({"C4", "C5", "C2", "C3", "C1"});
  const Ids truth = {"C4"};
  CHECK(ndcg_at_k(results, truth, g, 5) == doctest::Approx(ndcg_from_gains(std::vector<int>{3, 1, 2, 1, 1}, 5)));
  const Ids unknown = {"C99"};
  CHECK_THROWS_AS(ndcg_at_k(results, unknown, g, 5), Error);
}

TEST_CASE("overlap degree") {
  const auto sw = StopWords::english_default();
  const auto retinal = make_concept("R", {"Retinal vein occlusion", "Retinal disorder"});
  CHECK(overlap_degree("narrow retinal arterioles", retinal, sw) == 1.0 / 3.0);
  CHECK(overlap_degree("tooth mass excess", make_concept("M", {"Macrodontia"}), sw) == 0.0);
  CHECK(overlap_degree("Retinal disorder", retinal, sw) == 1.0);
  CHECK(overlap_degree("the retinal of retinal", retinal, sw) == 1.0);
  try {
    overlap_degree("of the", retinal, sw);
    FAIL("expected EmptyQueryAfterStopwords");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyQueryAfterStopwords);
  }
}

TEST_CASE("overlap buckets") {
  CHECK(bucket_of(0.0, kDefaultBucketEdges) == 1);
  CHECK(bucket_of(0.33, kDefaultBucketEdges) == 2);
  CHECK(bucket_of(0.2, kDefaultBucketEdges) == 2);
  CHECK(bucket_of(1.0, kDefaultBucketEdges) == 5);

  std::vector<QueryRecord> rows(3);
  rows[0].query_id = "a", rows[0].overlap = 0.0, rows[0].hits_at_10 = 1;
  rows[1].query_id = "b", rows[1].overlap = 0.1, rows[1].hits_at_10 = 0;
  rows[2].query_id = "c", rows[2].overlap = 1.0, rows[2].hits_at_10 = 1;
  const auto buckets = bucketize_by_overlap(rows, kDefaultBucketEdges);
  REQUIRE(buckets.size() == 5);
  CHECK(buckets[0].query_ids == std::vector<std::string>{"a", "b"});
  CHECK(buckets[0].mean_hits_at_10 == 0.5);
  CHECK_FALSE(buckets[1].mean_hits_at_10.has_value());
  CHECK(buckets[4].mean_hits_at_10 == 1.0);

  const std::vector<double> single = {0.0, 1.0};
  const auto one = bucketize_by_overlap(rows, single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].query_ids.size() == 3);

  const std::vector<double> bad = {0.0, 0.5, 0.4, 1.0};
  CHECK_THROWS_AS(bucketize_by_overlap(rows, bad), Error);
  const std::vector<double> short_range = {0.0, 0.5};
  CHECK_THROWS_AS(bucketize_by_overlap(rows, short_range), Error);
}

TEST_CASE("single-query run") {
  auto g = numbered_graph(12);
  std::vector<Concept> cs;
  for (const auto& [id, c] : g.concepts()) cs.push_back(c);
  cs.push_back(make_concept("T", {"target finding"}));
  g = OntologyGraph::from_concepts(cs);

  const CannedRanker ranker({{"target", with_truth_at(2)}});
  const std::vector<EvalQuery> queries = {{"q1", "target", {}, {"T"}}};
  const auto report = evaluate_run(queries, ranker, g);
  CHECK(report.aggregates.at("hits@1") == 0.0);
  CHECK(report.aggregates.at("hits@5") == 1.0);
  CHECK(report.aggregates.at("mrr") == 0.5);
  REQUIRE(report.per_query.size() == 1);
  CHECK(report.per_query[0].first_relevant_rank == 2);
  CHECK(report.per_query[0].overlap == 1.0);
  CHECK(report.per_query[0].bucket == 5);
  CHECK(report_to_json(evaluate_run(queries, ranker, g)) == report_to_json(report));
}

TEST_CASE("significance against a weaker baseline") {
  auto g = numbered_graph(12);
  std::vector<Concept> cs;
  for (const auto& [id, c] : g.concepts()) cs.push_back(c);
  cs.push_back(make_concept("T", {"target"}));
  g = OntologyGraph::from_concepts(cs);

  std::vector<EvalQuery> queries;
  std::map<std::string, Ids> strong, weak;
  const std::size_t strong_ranks[] = {1, 1, 2, 1, 3};
  const std::size_t weak_ranks[] = {2, 4, 3, 6, 4};
  for (int i = 0; i < 5; ++i) {
    const std::string q = "query " + std::to_string(i);
    queries.push_back({"q" + std::to_string(i), q, {}, {"T"}});
    strong[q] = with_truth_at(strong_ranks[i]);
    weak[q] = with_truth_at(weak_ranks[i]);
  }
  EvalOptions opts;
  opts.k_list = {1};
  auto a = evaluate_run(queries, CannedRanker(strong), g, opts);
  const auto b = evaluate_run(queries, CannedRanker(weak), g, opts);
  add_significance(a, b, "weak.json", SignificanceStat::ReciprocalRank);
  add_significance(a, b, "weak.json", SignificanceStat::Hits);
  REQUIRE(a.significance.size() == 2);
  const auto& rr = a.significance[0];
  CHECK(rr.stat == "rr");
  CHECK(rr.n == 5);
  CHECK(rr.t > 0);
  CHECK(rr.p < 1);
  // Direct computation of the rr differences.
  std::vector<double> d;
  for (int i = 0; i < 5; ++i) d.push_back(1.0 / strong_ranks[i] - 1.0 / weak_ranks[i]);
  double mean = 0;
  for (double x : d) mean += x / 5;
  double var = 0;
  for (double x : d) var += (x - mean) * (x - mean) / 4;
  CHECK(rr.t == doctest::Approx(mean / std::sqrt(var / 5)).epsilon(1e-12));
  CHECK(a.significance[1].stat == "hits@1");

  auto mismatched = b;
  mismatched.per_query.pop_back();
  CHECK_THROWS_AS(add_significance(a, mismatched, "x", SignificanceStat::Hits), Error);
}

TEST_CASE("report JSON round trip and shape") {
  const auto g = testsupport::figure1_graph();
  const CannedRanker ranker({{"tired", {"C5", "C4"}}, {"of the", {"C1"}}});
  const std::vector<EvalQuery> queries = {{"q1", "tired", {}, {"C5"}}, {"q2", "of the", {}, {"C3"}}};
  auto report = evaluate_run(queries, ranker, g);
  add_significance(report, report, "self.json", SignificanceStat::Hits);
  const auto text = report_to_json(report);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.contains("per_query"));
  CHECK(j.contains("aggregates"));
  CHECK(j.contains("buckets"));
  CHECK(j.contains("significance"));
  CHECK(j["per_query"][1]["overlap"].is_null());
  CHECK(j["per_query"][1]["first_relevant_rank"].is_null());
  CHECK(report_to_json(report_from_json(text)) == text);
  CHECK_THROWS_AS(report_from_json("{\"nope\":1}"), Error);
}

TEST_CASE("query files") {
  testsupport::TempDir dir;
  testsupport::write_text(dir / "q.tsv", "q1\tnarrow retinal arterioles\tR1\nq2\ttooth mass\tM1,M2\n");
  const auto text = load_queries(dir / "q.tsv", QueryMode::Text);
  REQUIRE(text.size() == 2);
  CHECK(*text[0].text == "narrow retinal arterioles");
  CHECK(text[1].relevant_ids == Ids{"M1", "M2"});

  testsupport::write_text(dir / "c.tsv", "q1\tFatigue|Weariness\tC2\n");
  const auto concept_queries = load_queries(dir / "c.tsv", QueryMode::Concept);
  REQUIRE(concept_queries.size() == 1);
  CHECK(concept_queries[0].concept_mode());
  CHECK(concept_queries[0].labels == std::vector<std::string>{"Fatigue", "Weariness"});

  testsupport::write_text(dir / "bad.tsv", "q1\tonly two\n");
  try {
    load_queries(dir / "bad.tsv", QueryMode::Text);
    FAIL("expected MalformedQueryFile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedQueryFile);
  }
  testsupport::write_text(dir / "dup.tsv", "q1\ta\tX\nq1\tb\tY\n");
  CHECK_THROWS_AS(load_queries(dir / "dup.tsv", QueryMode::Text), Error);
}
