#include "ontosearch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "io_util.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/stats.hpp"

namespace ontosearch {

namespace {

using nlohmann::json;

std::string hits_key(std::size_t k) { return "hits@" + std::to_string(k); }
std::string ndcg_key(std::size_t k) { return "ndcg@" + std::to_string(k); }

bool is_relevant(const ConceptId& id, std::span<const ConceptId> relevant) {
  return std::find(relevant.begin(), relevant.end(), id) != relevant.end();
}

std::set<std::string, std::less<>> content_tokens(std::span<const std::string> texts,
                                                  const StopWords& stopwords) {
  std::set<std::string, std::less<>> out;
  for (const auto& text : texts) {
    for (auto& t : stopwords.filter(tokenize(text))) out.insert(std::move(t));
  }
  return out;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::vector<EvalQuery> load_queries(const std::filesystem::path& path, QueryMode mode) {
  std::vector<EvalQuery> queries;
  std::set<std::string> seen;
  detail::for_each_record(path, [&](std::size_t line, std::string_view rec) {
    const auto where = detail::location(path, line);
    auto fields = detail::split(rec, '\t');
    if (fields.size() != 3 || fields[0].empty()) {
      throw Error(ErrorCode::MalformedQueryFile, where + ": expected id, query, relevant ids");
    }
    EvalQuery q;
    q.query_id = std::string(fields[0]);
    if (!seen.insert(q.query_id).second) {
      throw Error(ErrorCode::MalformedQueryFile, where + ": duplicate query id " + q.query_id);
    }
    if (mode == QueryMode::Text) {
      q.text = std::string(fields[1]);
    } else {
      for (auto label : detail::split(fields[1], '|')) {
        if (!detail::trim(label).empty()) q.labels.emplace_back(label);
      }
      if (q.labels.empty()) throw Error(ErrorCode::MalformedQueryFile, where + ": no query labels");
    }
    for (auto id : detail::split(fields[2], ',')) {
      auto trimmed = detail::trim(id);
      if (!trimmed.empty()) q.relevant_ids.emplace_back(trimmed);
    }
    if (q.relevant_ids.empty()) {
      throw Error(ErrorCode::MalformedQueryFile, where + ": no relevant ids");
    }
    queries.push_back(std::move(q));
  });
  return queries;
}

std::optional<std::size_t> first_relevant_rank(std::span<const RankedHit> results,
                                                std::span<const ConceptId> relevant) {
  for (const auto& hit : results) {
    if (is_relevant(hit.concept_id, relevant)) return hit.rank;
  }
  return std::nullopt;
}

int hits_at_k(std::span<const RankedHit> results, std::span<const ConceptId> relevant, std::size_t k) {
  auto rank = first_relevant_rank(results, relevant);
  return rank && *rank <= k ? 1 : 0;
}

double mrr(std::span<const RankedHit> results, std::span<const ConceptId> relevant) {
  auto rank = first_relevant_rank(results, relevant);
  return rank ? 1.0 / static_cast<double>(*rank) : 0.0;
}

double ndcg_from_gains(std::span<const int> gains_in_rank_order, std::size_t k) {
  const std::size_t n = std::min(k, gains_in_rank_order.size());
  std::vector<int> gains(gains_in_rank_order.begin(), gains_in_rank_order.begin() + n);
  auto dcg = [](const std::vector<int>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] / std::log2(static_cast<double>(i) + 2.0);
    return s;
  };
  const double actual = dcg(gains);
  std::sort(gains.begin(), gains.end(), std::greater<>());
  const double ideal = dcg(gains);
  return ideal > 0.0 ? actual / ideal : 0.0;
}

double ndcg_at_k(std::span<const RankedHit> results, std::span<const ConceptId> truths,
                 const OntologyGraph& graph, std::size_t k) {
  std::vector<int> gains;
  for (const auto& hit : results) {
    if (gains.size() == k) break;
    int g = 0;
    for (const auto& truth : truths) {
      g = std::max(g, gain_of_relation(relation_between(graph, hit.concept_id, truth)));
    }
    gains.push_back(g);
  }
  for (const auto& truth : truths) graph.at(truth);
  return ndcg_from_gains(gains, k);
}

double overlap_degree(std::span<const std::string> query_texts, const Concept& truth,
                      const StopWords& stopwords) {
  auto query = content_tokens(query_texts, stopwords);
  if (query.empty()) {
    throw Error(ErrorCode::EmptyQueryAfterStopwords, "query has no tokens after stop-word removal");
  }
  auto concept_tokens = content_tokens(truth.labels, stopwords);
  std::size_t shared = 0;
  for (const auto& t : query) shared += concept_tokens.contains(t) ? 1 : 0;
  return static_cast<double>(shared) / static_cast<double>(query.size());
}

double overlap_degree(std::string_view query, const Concept& truth, const StopWords& stopwords) {
  const std::string texts[] = {std::string(query)};
  return overlap_degree(texts, truth, stopwords);
}

std::size_t bucket_of(double overlap, std::span<const double> edges) {
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const bool last = i + 2 == edges.size();
    if (overlap >= edges[i] && (overlap < edges[i + 1] || (last && overlap <= edges[i + 1]))) {
      return i + 1;
    }
  }
  throw Error(ErrorCode::BadBucketEdges, "overlap " + std::to_string(overlap) + " outside bucket edges");
}

std::vector<OverlapBucket> bucketize_by_overlap(std::span<const QueryRecord> rows,
                                                std::span<const double> edges) {
  if (edges.size() < 2 || edges.front() != 0.0 || edges.back() != 1.0 ||
      std::adjacent_find(edges.begin(), edges.end(), std::greater_equal<>()) != edges.end()) {
    throw Error(ErrorCode::BadBucketEdges, "bucket edges must increase strictly from 0 to 1");
  }
  std::vector<OverlapBucket> buckets;
  std::vector<double> sums(edges.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) buckets.push_back({edges[i], edges[i + 1], {}, {}});
  for (const auto& row : rows) {
    if (!row.overlap) continue;
    const std::size_t b = bucket_of(*row.overlap, edges) - 1;
    buckets[b].query_ids.push_back(row.query_id);
    sums[b] += row.hits_at_10;
  }
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    if (!buckets[b].query_ids.empty()) {
      buckets[b].mean_hits_at_10 = sums[b] / static_cast<double>(buckets[b].query_ids.size());
    }
  }
  return buckets;
}

EvalReport evaluate_run(std::span<const EvalQuery> queries, const Ranker& ranker,
                        const OntologyGraph& graph, const EvalOptions& options) {
  if (options.k_list.empty() ||
      std::any_of(options.k_list.begin(), options.k_list.end(), [](std::size_t k) { return k == 0; })) {
    throw Error(ErrorCode::InvalidArgument, "k list must be non-empty with every k >= 1");
  }
  EvalReport report;
  report.ranker = options.ranker_name;
  report.k_list = options.k_list;
  std::sort(report.k_list.begin(), report.k_list.end());
  report.k_list.erase(std::unique(report.k_list.begin(), report.k_list.end()), report.k_list.end());
  const std::size_t depth = std::max<std::size_t>(report.k_list.back(), 10);

  for (const auto& q : queries) {
    for (const auto& id : q.relevant_ids) graph.at(id);
    auto results = q.concept_mode() ? ranker.search_concept(q.labels, depth)
                                    : ranker.search_text(*q.text, depth);
    QueryRecord row;
    row.query_id = q.query_id;
    row.first_relevant_rank = first_relevant_rank(results, q.relevant_ids);
    for (std::size_t k : report.k_list) {
      row.hits[k] = hits_at_k(results, q.relevant_ids, k);
      row.ndcg[k] = ndcg_at_k(results, q.relevant_ids, graph, k);
    }
    row.hits_at_10 = hits_at_k(results, q.relevant_ids, 10);
    row.mrr = mrr(results, q.relevant_ids);

    const std::vector<std::string> texts =
        q.concept_mode() ? q.labels : std::vector<std::string>{*q.text};
    if (!content_tokens(texts, options.stopwords).empty()) {
      double best = 0.0;
      for (const auto& id : q.relevant_ids) {
        best = std::max(best, overlap_degree(texts, graph.at(id), options.stopwords));
      }
      row.overlap = best;
      row.bucket = bucket_of(best, options.bucket_edges);
    }
    report.per_query.push_back(std::move(row));
  }

  const double n = static_cast<double>(report.per_query.size());
  if (!report.per_query.empty()) {
    for (std::size_t k : report.k_list) {
      double h = 0.0, g = 0.0;
      for (const auto& row : report.per_query) {
        h += row.hits.at(k);
        g += row.ndcg.at(k);
      }
      report.aggregates[hits_key(k)] = h / n;
      report.aggregates[ndcg_key(k)] = g / n;
    }
    double rr = 0.0;
    for (const auto& row : report.per_query) rr += row.mrr;
    report.aggregates["mrr"] = rr / n;
  }
  report.buckets = bucketize_by_overlap(report.per_query, options.bucket_edges);
  return report;
}

void add_significance(EvalReport& report, const EvalReport& baseline, const std::string& baseline_name,
                      SignificanceStat stat) {
  if (report.per_query.size() != baseline.per_query.size()) {
    throw Error(ErrorCode::LengthMismatch, "baseline " + baseline_name + " covers " +
                                               std::to_string(baseline.per_query.size()) +
                                               " queries, run covers " +
                                               std::to_string(report.per_query.size()));
  }
  std::unordered_map<std::string, const QueryRecord*> by_id;
  for (const auto& row : baseline.per_query) by_id.emplace(row.query_id, &row);
  std::vector<const QueryRecord*> paired;
  for (const auto& row : report.per_query) {
    auto it = by_id.find(row.query_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::LengthMismatch,
                  "baseline " + baseline_name + " lacks query " + row.query_id);
    }
    paired.push_back(it->second);
  }

  auto run = [&](const std::string& name, auto&& value) {
    std::vector<double> a, b;
    for (std::size_t i = 0; i < paired.size(); ++i) {
      a.push_back(value(report.per_query[i]));
      b.push_back(value(*paired[i]));
    }
    auto r = paired_t_test(a, b);
    report.significance.push_back({baseline_name, name, r.t, r.p, a.size()});
  };

  if (stat == SignificanceStat::ReciprocalRank) {
    run("rr", [](const QueryRecord& r) { return r.mrr; });
    return;
  }
  for (std::size_t k : report.k_list) {
    run(hits_key(k), [&](const QueryRecord& r) {
      auto it = r.hits.find(k);
      if (it == r.hits.end()) {
        throw Error(ErrorCode::BadReport, "baseline " + baseline_name + " has no " + hits_key(k));
      }
      return static_cast<double>(it->second);
    });
  }
}

std::string report_to_json(const EvalReport& report) {
  json per_query = json::array();
  for (const auto& row : report.per_query) {
    json j;
    j["query_id"] = row.query_id;
    j["first_relevant_rank"] = row.first_relevant_rank ? json(*row.first_relevant_rank) : json(nullptr);
    for (const auto& [k, v] : row.hits) j[hits_key(k)] = v;
    for (const auto& [k, v] : row.ndcg) j[ndcg_key(k)] = v;
    j["hits@10"] = row.hits_at_10;
    j["mrr"] = row.mrr;
    j["overlap"] = optional_number(row.overlap);
    j["bucket"] = row.bucket ? json(*row.bucket) : json(nullptr);
    per_query.push_back(std::move(j));
  }
  json buckets = json::array();
  for (const auto& b : report.buckets) {
    buckets.push_back({{"lower", b.lower},
                       {"upper", b.upper},
                       {"query_ids", b.query_ids},
                       {"mean_hits@10", optional_number(b.mean_hits_at_10)}});
  }
  json significance = json::array();
  for (const auto& s : report.significance) {
    significance.push_back({{"baseline", s.baseline},
                            {"stat", s.stat},
                            {"t", finite_or_null(s.t)},
                            {"p", s.p},
                            {"n", s.n}});
  }
  json root = {{"ranker", report.ranker},
               {"k_list", report.k_list},
               {"per_query", std::move(per_query)},
               {"aggregates", report.aggregates},
               {"buckets", std::move(buckets)},
               {"significance", std::move(significance)}};
  return root.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  try {
    json root = json::parse(text);
    EvalReport report;
    report.ranker = root.value("ranker", "");
    report.k_list = root.at("k_list").get<std::vector<std::size_t>>();
    for (const auto& j : root.at("per_query")) {
      QueryRecord row;
      row.query_id = j.at("query_id").get<std::string>();
      if (!j.at("first_relevant_rank").is_null()) {
        row.first_relevant_rank = j.at("first_relevant_rank").get<std::size_t>();
      }
      for (std::size_t k : report.k_list) {
        row.hits[k] = j.at(hits_key(k)).get<int>();
        row.ndcg[k] = j.at(ndcg_key(k)).get<double>();
      }
      row.hits_at_10 = j.at("hits@10").get<int>();
      row.mrr = j.at("mrr").get<double>();
      if (!j.at("overlap").is_null()) row.overlap = j.at("overlap").get<double>();
      if (!j.at("bucket").is_null()) row.bucket = j.at("bucket").get<std::size_t>();
      report.per_query.push_back(std::move(row));
    }
    report.aggregates = root.at("aggregates").get<std::map<std::string, double>>();
    for (const auto& j : root.at("buckets")) {
      OverlapBucket b;
      b.lower = j.at("lower").get<double>();
      b.upper = j.at("upper").get<double>();
      b.query_ids = j.at("query_ids").get<std::vector<std::string>>();
      if (!j.at("mean_hits@10").is_null()) b.mean_hits_at_10 = j.at("mean_hits@10").get<double>();
      report.buckets.push_back(std::move(b));
    }
    for (const auto& j : root.at("significance")) {
      Significance s;
      s.baseline = j.at("baseline").get<std::string>();
      s.stat = j.at("stat").get<std::string>();
      s.t = j.at("t").is_null() ? std::numeric_limits<double>::infinity() : j.at("t").get<double>();
      s.p = j.at("p").get<double>();
      s.n = j.at("n").get<std::size_t>();
      report.significance.push_back(std::move(s));
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadReport, std::string("malformed report: ") + e.what());
  }
}

}  // namespace ontosearch
