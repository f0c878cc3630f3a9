#include "ontosearch/tripletgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "io_util.hpp"
#include "ontosearch/error.hpp"
#include "ontosearch/random.hpp"

namespace ontosearch {

namespace {

std::vector<const std::string*> label_pool(const OntologyGraph& graph,
                                           const std::vector<ConceptId>& ids) {
  std::vector<const std::string*> pool;
  for (const auto& id : ids) {
    for (const auto& label : graph.at(id).labels) pool.push_back(&label);
  }
  std::sort(pool.begin(), pool.end(), [](const auto* a, const auto* b) { return *a < *b; });
  return pool;
}

const std::string* draw(Rng& rng, const std::vector<const std::string*>& pool) {
  if (pool.empty()) return nullptr;
  return pool[rng.uniform_index(pool.size())];
}

}  // namespace

void SplitRatios::validate() const {
  for (double r : {train, dev, test}) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::InvalidRatios, "split ratio outside [0, 1]");
  }
  if (std::abs(train + dev + test - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidRatios, "split ratios must sum to 1");
  }
}

TripletDataset generate_triplets(const OntologyGraph& graph, std::uint64_t seed,
                                 const TripletOptions& options) {
  TripletDataset out;
  out.seed = seed;

  auto emit = [&](const std::string& a, const std::string& p, const std::string& n) {
    if (p == n) return;
    out.entries.push_back({a, p, n});
  };

  for (const auto& [id, concept_] : graph.concepts()) {
    const auto parents = label_pool(graph, concept_.parent_ids);
    auto others_ids = graph.siblings(id);
    auto uncles = graph.uncles(id);
    others_ids.insert(others_ids.end(), uncles.begin(), uncles.end());
    std::sort(others_ids.begin(), others_ids.end());
    others_ids.erase(std::unique(others_ids.begin(), others_ids.end()), others_ids.end());
    std::erase_if(others_ids, [&](const ConceptId& o) {
      return std::binary_search(concept_.parent_ids.begin(), concept_.parent_ids.end(), o);
    });
    const auto others = label_pool(graph, others_ids);

    Rng rng(derive_seed(seed, id));
    const auto& labels = concept_.labels;

    if (labels.size() == 1) {
      if (options.single_label_fallback && !parents.empty() && !others.empty()) {
        const std::string* p = draw(rng, parents);
        const std::string* o = draw(rng, others);
        emit(labels.front(), *p, *o);
      }
      continue;
    }

    for (const auto& l1 : labels) {
      for (const auto& l2 : labels) {
        if (&l1 == &l2) continue;
        const std::string* p = draw(rng, parents);
        const std::string* o = draw(rng, others);
        if (p) emit(l1, l2, *p);
        if (o) emit(l1, l2, *o);
        if (p && o) emit(l1, *p, *o);
      }
    }
  }

  if (options.dedup) {
    std::set<TripletExample> seen;
    std::erase_if(out.entries, [&](const TripletExample& t) { return !seen.insert(t).second; });
  }
  return out;
}

DatasetSplit split_dataset(const TripletDataset& dataset, const SplitRatios& ratios,
                           std::uint64_t seed) {
  ratios.validate();
  std::vector<TripletExample> shuffled = dataset.entries;
  Rng rng(seed);
  rng.shuffle(std::span(shuffled));

  const std::size_t n = shuffled.size();
  // The epsilon keeps exact products such as 100 * 0.05 from flooring to 4.
  auto portion = [n](double r) {
    return std::min(n, static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9)));
  };
  const std::size_t n_dev = portion(ratios.dev);
  const std::size_t n_test = std::min(n - n_dev, portion(ratios.test));
  const std::size_t n_train = n - n_dev - n_test;

  DatasetSplit split;
  auto first = shuffled.begin();
  split.train.assign(std::make_move_iterator(first), std::make_move_iterator(first + n_train));
  first += n_train;
  split.dev.assign(std::make_move_iterator(first), std::make_move_iterator(first + n_dev));
  first += n_dev;
  split.test.assign(std::make_move_iterator(first), std::make_move_iterator(shuffled.end()));
  return split;
}

void write_triplets_tsv(const std::filesystem::path& path, const std::vector<TripletExample>& rows) {
  std::string content;
  for (const auto& t : rows) {
    content += t.anchor + '\t' + t.positive + '\t' + t.negative + '\n';
  }
  detail::write_file(path, content);
}

std::vector<TripletExample> read_triplets_tsv(const std::filesystem::path& path) {
  std::vector<TripletExample> rows;
  detail::for_each_record(path, [&](std::size_t line, std::string_view rec) {
    auto fields = detail::split(rec, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::MalformedLine,
                  detail::location(path, line) + ": expected anchor, positive, negative");
    }
    rows.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2])});
  });
  return rows;
}

}  // namespace ontosearch
