#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ontosearch {

using ConceptId = std::string;

struct Concept {
  ConceptId id;
  /// Non-empty; front() is the preferred label. No duplicates.
  std::vector<std::string> labels;
  /// Sorted, unique.
  std::vector<ConceptId> parent_ids;

  const std::string& preferred_label() const { return labels.front(); }

  bool operator==(const Concept&) const = default;
};

/// How a returned concept relates to the ground-truth concept of a query.
enum class RelationKind {
  Same,
  ParentOfTruth,
  ChildOfTruth,
  GrandParentOfTruth,
  GrandChildOfTruth,
  UncleOfTruth,
  SiblingOfTruth,
  Other,
};

std::string_view to_string(RelationKind kind) noexcept;

/// Immutable, validated concept hierarchy. Multiple parents are allowed; the
/// parent relation is acyclic. Iteration is in ascending concept id order.
class OntologyGraph {
 public:
  using ConceptMap = std::map<ConceptId, Concept, std::less<>>;

  OntologyGraph() = default;

  /// Validates ids, labels, parent references and acyclicity, and derives the
  /// child map. Parent lists are sorted and de-duplicated.
  static OntologyGraph from_concepts(std::vector<Concept> concepts);

  bool contains(std::string_view id) const { return concepts_.find(id) != concepts_.end(); }

  /// Throws UnknownConceptId.
  const Concept& at(std::string_view id) const;
  const Concept* find(std::string_view id) const;

  const std::vector<ConceptId>& parents(std::string_view id) const { return at(id).parent_ids; }
  /// Sorted.
  const std::vector<ConceptId>& children(std::string_view id) const;

  /// Concepts sharing at least one parent with `id`, excluding `id`. Sorted.
  std::vector<ConceptId> siblings(std::string_view id) const;

  /// Siblings of any direct parent of `id`, excluding `id` itself and its
  /// direct parents. Sorted.
  std::vector<ConceptId> uncles(std::string_view id) const;

  const ConceptMap& concepts() const noexcept { return concepts_; }
  std::size_t size() const noexcept { return concepts_.size(); }
  bool empty() const noexcept { return concepts_.empty(); }
  std::size_t edge_count() const noexcept;
  std::size_t label_count() const noexcept;

  bool operator==(const OntologyGraph&) const = default;

 private:
  ConceptMap concepts_;
  std::map<ConceptId, std::vector<ConceptId>, std::less<>> children_;
};

/// The three-file TSV form: concepts (id, preferred label), labels (id,
/// synonym) and relations (child, parent). `relations` may be empty to load a
/// flat concept list.
struct OntologyFiles {
  std::filesystem::path concepts;
  std::filesystem::path labels;
  std::filesystem::path relations;
};

OntologyGraph load_ontology(const OntologyFiles& files);
void save_ontology(const OntologyGraph& graph, const OntologyFiles& files);

std::vector<ConceptId> get_siblings(const OntologyGraph& graph, std::string_view id);

/// Highest-gain relation of `result_id` with respect to `truth_id`.
RelationKind relation_between(const OntologyGraph& graph, std::string_view result_id,
                              std::string_view truth_id);

/// Same 3; parent/child 2; grandparent, grandchild, uncle, sibling 1; else 0.
int gain_of_relation(RelationKind kind) noexcept;

}  // namespace ontosearch
