#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ontosearch/ontology.hpp"

namespace ontosearch {

/// One entry of a result list. Ranks are 1-based and consecutive; scores
/// are non-increasing with rank.
struct RankedHit {
  ConceptId concept_id;
  std::string best_label;
  double score = 0.0;
  std::size_t rank = 0;

  bool operator==(const RankedHit&) const = default;
};

/// Best score of one concept before ranking.
struct ConceptScore {
  ConceptId concept_id;
  std::string best_label;
  double score = 0.0;
};

/// Top-k by score descending, ties by ascending concept id; assigns ranks.
/// Throws InvalidArgument when k == 0.
std::vector<RankedHit> select_top_k(std::vector<ConceptScore> scores, std::size_t k);

/// Folds `incoming` into `acc` keeping the max score per concept. A strictly
/// greater score replaces the stored label.
void merge_max(std::vector<ConceptScore>& acc, const std::vector<ConceptScore>& incoming);

/// {"best_label":..,"concept_id":..,"rank":..,"score":..} with keys sorted.
std::string hit_to_json(const RankedHit& hit);
/// One hit_to_json object per line, each terminated by '\n'.
std::string hits_to_json_lines(const std::vector<RankedHit>& hits);
/// "[" + the same objects joined by "," + "]".
std::string hits_to_json_array(const std::vector<RankedHit>& hits);

}  // namespace ontosearch
