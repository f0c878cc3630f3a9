#include "ontosearch/ontology.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "io_util.hpp"
#include "ontosearch/error.hpp"

namespace ontosearch {

namespace {

const std::vector<ConceptId> kNoIds;

void sort_unique(std::vector<ConceptId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

// Iterative three-colour DFS along parent edges. Returns one cycle as
// "a -> b -> ... -> a", or an empty string.
std::string find_cycle(const OntologyGraph::ConceptMap& concepts) {
  enum class Colour : unsigned char { White, Grey, Black };
  std::unordered_map<std::string_view, Colour> colour;
  colour.reserve(concepts.size());
  for (const auto& [id, c] : concepts) colour.emplace(id, Colour::White);

  struct Frame {
    const Concept* node;
    std::size_t next_parent;
  };
  std::vector<Frame> stack;

  for (const auto& [root_id, root] : concepts) {
    if (colour[root_id] != Colour::White) continue;
    stack.push_back({&root, 0});
    colour[root_id] = Colour::Grey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next_parent == top.node->parent_ids.size()) {
        colour[top.node->id] = Colour::Black;
        stack.pop_back();
        continue;
      }
      const ConceptId& parent = top.node->parent_ids[top.next_parent++];
      Colour& pc = colour[parent];
      if (pc == Colour::Grey) {
        std::string cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const Frame& f) { return f.node->id == parent; });
        for (; it != stack.end(); ++it) cycle += it->node->id + " -> ";
        return cycle + parent;
      }
      if (pc == Colour::White) {
        pc = Colour::Grey;
        stack.push_back({&concepts.find(parent)->second, 0});
      }
    }
  }
  return {};
}

}  // namespace

std::string_view to_string(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Same: return "Same";
    case RelationKind::ParentOfTruth: return "ParentOfTruth";
    case RelationKind::ChildOfTruth: return "ChildOfTruth";
    case RelationKind::GrandParentOfTruth: return "GrandParentOfTruth";
    case RelationKind::GrandChildOfTruth: return "GrandChildOfTruth";
    case RelationKind::UncleOfTruth: return "UncleOfTruth";
    case RelationKind::SiblingOfTruth: return "SiblingOfTruth";
    case RelationKind::Other: return "Other";
  }
  return "Other";
}

OntologyGraph OntologyGraph::from_concepts(std::vector<Concept> concepts) {
  OntologyGraph graph;
  for (auto& c : concepts) {
    if (c.id.empty()) throw Error(ErrorCode::MalformedLine, "empty concept id");
    if (c.labels.empty()) throw Error(ErrorCode::EmptyLabel, "concept " + c.id + " has no labels");
    std::unordered_set<std::string_view> seen;
    for (const auto& label : c.labels) {
      if (detail::trim(label).empty()) {
        throw Error(ErrorCode::EmptyLabel, "concept " + c.id + " has an empty label");
      }
      if (!seen.insert(label).second) {
        throw Error(ErrorCode::DuplicateLabel,
                    "concept " + c.id + " repeats label '" + label + "'");
      }
    }
    sort_unique(c.parent_ids);
    if (graph.concepts_.contains(c.id)) {
      throw Error(ErrorCode::DuplicateConceptId, "duplicate concept id " + c.id);
    }
    ConceptId id = c.id;
    graph.concepts_.emplace(std::move(id), std::move(c));
  }

  for (const auto& [id, c] : graph.concepts_) {
    for (const auto& parent : c.parent_ids) {
      if (parent == id) throw Error(ErrorCode::CycleDetected, "cycle: " + id + " -> " + id);
      if (!graph.contains(parent)) {
        throw Error(ErrorCode::UnknownParentId, "concept " + id + " names unknown parent " + parent);
      }
      graph.children_[parent].push_back(id);
    }
  }
  // Children are appended in ascending child id order, so already sorted.

  if (auto cycle = find_cycle(graph.concepts_); !cycle.empty()) {
    throw Error(ErrorCode::CycleDetected, "cycle: " + cycle);
  }
  return graph;
}

const Concept& OntologyGraph::at(std::string_view id) const {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) {
    throw Error(ErrorCode::UnknownConceptId, "unknown concept id " + std::string(id));
  }
  return it->second;
}

const Concept* OntologyGraph::find(std::string_view id) const {
  auto it = concepts_.find(id);
  return it == concepts_.end() ? nullptr : &it->second;
}

const std::vector<ConceptId>& OntologyGraph::children(std::string_view id) const {
  at(id);
  auto it = children_.find(id);
  return it == children_.end() ? kNoIds : it->second;
}

std::vector<ConceptId> OntologyGraph::siblings(std::string_view id) const {
  std::vector<ConceptId> out;
  for (const auto& parent : at(id).parent_ids) {
    for (const auto& child : children(parent)) {
      if (child != id) out.push_back(child);
    }
  }
  sort_unique(out);
  return out;
}

std::vector<ConceptId> OntologyGraph::uncles(std::string_view id) const {
  const auto& parents = at(id).parent_ids;
  std::vector<ConceptId> out;
  for (const auto& parent : parents) {
    for (auto& s : siblings(parent)) {
      if (s != id && !std::binary_search(parents.begin(), parents.end(), s)) {
        out.push_back(std::move(s));
      }
    }
  }
  sort_unique(out);
  return out;
}

std::size_t OntologyGraph::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, c] : concepts_) n += c.parent_ids.size();
  return n;
}

std::size_t OntologyGraph::label_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, c] : concepts_) n += c.labels.size();
  return n;
}

OntologyGraph load_ontology(const OntologyFiles& files) {
  std::vector<Concept> concepts;
  std::unordered_map<std::string, std::size_t> position;

  auto expect_two = [](const std::filesystem::path& path, std::size_t line, std::string_view rec) {
    auto fields = detail::split(rec, '\t');
    if (fields.size() != 2) {
      throw Error(ErrorCode::MalformedLine,
                  detail::location(path, line) + ": expected 2 tab-separated fields, got " +
                      std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw Error(ErrorCode::MalformedLine, detail::location(path, line) + ": empty concept id");
    }
    return std::pair{std::string(fields[0]), std::string(fields[1])};
  };

  detail::for_each_record(files.concepts, [&](std::size_t line, std::string_view rec) {
    auto [id, label] = expect_two(files.concepts, line, rec);
    if (!position.emplace(id, concepts.size()).second) {
      throw Error(ErrorCode::DuplicateConceptId,
                  detail::location(files.concepts, line) + ": duplicate concept id " + id);
    }
    concepts.push_back(Concept{std::move(id), {std::move(label)}, {}});
  });

  if (!files.labels.empty()) {
    detail::for_each_record(files.labels, [&](std::size_t line, std::string_view rec) {
      auto [id, label] = expect_two(files.labels, line, rec);
      auto it = position.find(id);
      if (it == position.end()) {
        throw Error(ErrorCode::UnknownConceptId,
                    detail::location(files.labels, line) + ": unknown concept id " + id);
      }
      concepts[it->second].labels.push_back(std::move(label));
    });
  }

  if (!files.relations.empty()) {
    detail::for_each_record(files.relations, [&](std::size_t line, std::string_view rec) {
      auto [child, parent] = expect_two(files.relations, line, rec);
      auto it = position.find(child);
      if (it == position.end()) {
        throw Error(ErrorCode::UnknownConceptId,
                    detail::location(files.relations, line) + ": unknown child id " + child);
      }
      if (!position.contains(parent)) {
        throw Error(ErrorCode::UnknownParentId,
                    detail::location(files.relations, line) + ": unknown parent id " + parent);
      }
      concepts[it->second].parent_ids.push_back(std::move(parent));
    });
  }

  return OntologyGraph::from_concepts(std::move(concepts));
}

void save_ontology(const OntologyGraph& graph, const OntologyFiles& files) {
  std::string concepts, labels, relations;
  for (const auto& [id, c] : graph.concepts()) {
    concepts += id + '\t' + c.labels.front() + '\n';
    for (std::size_t i = 1; i < c.labels.size(); ++i) labels += id + '\t' + c.labels[i] + '\n';
    for (const auto& p : c.parent_ids) relations += id + '\t' + p + '\n';
  }
  detail::write_file(files.concepts, concepts);
  detail::write_file(files.labels, labels);
  detail::write_file(files.relations, relations);
}

std::vector<ConceptId> get_siblings(const OntologyGraph& graph, std::string_view id) {
  return graph.siblings(id);
}

RelationKind relation_between(const OntologyGraph& graph, std::string_view result_id,
                              std::string_view truth_id) {
  const Concept& truth = graph.at(truth_id);
  graph.at(result_id);
  if (result_id == truth_id) return RelationKind::Same;

  auto has = [](const std::vector<ConceptId>& ids, std::string_view id) {
    return std::binary_search(ids.begin(), ids.end(), id, std::less<>{});
  };

  if (has(truth.parent_ids, result_id)) return RelationKind::ParentOfTruth;
  const auto& truth_children = graph.children(truth_id);
  if (has(truth_children, result_id)) return RelationKind::ChildOfTruth;

  for (const auto& parent : truth.parent_ids) {
    if (has(graph.parents(parent), result_id)) return RelationKind::GrandParentOfTruth;
  }
  for (const auto& child : truth_children) {
    if (has(graph.children(child), result_id)) return RelationKind::GrandChildOfTruth;
  }
  if (has(graph.uncles(truth_id), result_id)) return RelationKind::UncleOfTruth;
  if (has(graph.siblings(truth_id), result_id)) return RelationKind::SiblingOfTruth;
  return RelationKind::Other;
}

int gain_of_relation(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Same: return 3;
    case RelationKind::ParentOfTruth:
    case RelationKind::ChildOfTruth: return 2;
    case RelationKind::GrandParentOfTruth:
    case RelationKind::GrandChildOfTruth:
    case RelationKind::UncleOfTruth:
    case RelationKind::SiblingOfTruth: return 1;
    case RelationKind::Other: return 0;
  }
  return 0;
}

}  // namespace ontosearch
