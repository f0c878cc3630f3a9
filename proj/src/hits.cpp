#include "ontosearch/hits.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "ontosearch/error.hpp"

namespace ontosearch {

std::vector<RankedHit> select_top_k(std::vector<ConceptScore> scores, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  auto better = [](const ConceptScore& a, const ConceptScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.concept_id < b.concept_id;
  };
  const std::size_t n = std::min(k, scores.size());
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(n), scores.end(),
                    better);
  std::vector<RankedHit> hits;
  hits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    hits.push_back({std::move(scores[i].concept_id), std::move(scores[i].best_label),
                    scores[i].score, i + 1});
  }
  return hits;
}

void merge_max(std::vector<ConceptScore>& acc, const std::vector<ConceptScore>& incoming) {
  std::unordered_map<std::string, std::size_t> where;
  where.reserve(acc.size() + incoming.size());
  for (std::size_t i = 0; i < acc.size(); ++i) where.emplace(acc[i].concept_id, i);
  for (const auto& s : incoming) {
    auto [it, inserted] = where.emplace(s.concept_id, acc.size());
    if (inserted) {
      acc.push_back(s);
    } else if (s.score > acc[it->second].score) {
      acc[it->second].score = s.score;
      acc[it->second].best_label = s.best_label;
    }
  }
}

std::string hit_to_json(const RankedHit& hit) {
  nlohmann::json j = {{"best_label", hit.best_label},
                      {"concept_id", hit.concept_id},
                      {"rank", hit.rank},
                      {"score", hit.score}};
  return j.dump();
}

std::string hits_to_json_lines(const std::vector<RankedHit>& hits) {
  std::string out;
  for (const auto& h : hits) {
    out += hit_to_json(h);
    out += '\n';
  }
  return out;
}

std::string hits_to_json_array(const std::vector<RankedHit>& hits) {
  std::string out = "[";
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (i) out += ',';
    out += hit_to_json(hits[i]);
  }
  out += ']';
  return out;
}

}  // namespace ontosearch
