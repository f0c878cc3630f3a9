#include "ontosearch/ontosearch.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "ontosearch/error.hpp"
#include "ontosearch/eval.hpp"
#include "ontosearch/index_store.hpp"
#include "ontosearch/ontology.hpp"
#include "ontosearch/trainer.hpp"
#include "ontosearch/tripletgen.hpp"

namespace os = ontosearch;
namespace fs = std::filesystem;
using nlohmann::json;

struct os_ontology {
  os::OntologyGraph graph;
};

struct os_index {
  os::SearchIndex index;
};

static_assert(static_cast<int>(os::ErrorCode::CycleDetected) == OS_ERR_CYCLE_DETECTED);
static_assert(static_cast<int>(os::ErrorCode::InvalidRatios) == OS_ERR_INVALID_RATIOS);
static_assert(static_cast<int>(os::ErrorCode::BadModelFile) == OS_ERR_BAD_MODEL_FILE);
static_assert(static_cast<int>(os::ErrorCode::UnknownRanker) == OS_ERR_UNKNOWN_RANKER);
static_assert(static_cast<int>(os::ErrorCode::BadReport) == OS_ERR_BAD_REPORT);
static_assert(static_cast<int>(os::ErrorCode::UsageError) == OS_ERR_USAGE);
static_assert(static_cast<int>(os::ErrorCode::Internal) == OS_ERR_INTERNAL);

namespace {

thread_local std::string g_last_error;

template <typename Fn>
os_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    fn();
    return OS_OK;
  } catch (const os::Error& e) {
    g_last_error = e.what();
    return static_cast<os_status>(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return OS_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return OS_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(bool condition, const char* what) {
  if (!condition) throw os::Error(os::ErrorCode::InvalidArgument, what);
}

fs::path optional_path(const char* p) { return p ? fs::path(p) : fs::path(); }

std::string format_hits(const std::vector<os::RankedHit>& hits, os_hits_format format) {
  return format == OS_HITS_LINES ? os::hits_to_json_lines(hits) : os::hits_to_json_array(hits);
}

}  // namespace

extern "C" {

OS_API const char* os_status_name(os_status status) {
  return os::error_name(static_cast<os::ErrorCode>(status)).data();
}

OS_API const char* os_last_error(void) { return g_last_error.c_str(); }

OS_API const char* os_version(void) { return "0.1.0"; }

OS_API void os_string_free(char* s) { std::free(s); }

// --- ontology ---------------------------------------------------------------

OS_API os_status os_ontology_load(const char* concepts_path, const char* labels_path,
                                  const char* relations_path, os_ontology** out) {
  return guarded([&] {
    require(concepts_path && out, "concepts path and out must be non-null");
    *out = nullptr;
    auto graph = os::load_ontology({concepts_path, optional_path(labels_path),
                                    optional_path(relations_path)});
    *out = new os_ontology{std::move(graph)};
  });
}

OS_API void os_ontology_free(os_ontology* ontology) { delete ontology; }

OS_API os_status os_ontology_stats_json(const os_ontology* ontology, char** out_json) {
  return guarded([&] {
    require(ontology && out_json, "null argument");
    std::size_t roots = 0;
    for (const auto& [id, c] : ontology->graph.concepts()) roots += c.parent_ids.empty() ? 1 : 0;
    json j = {{"concepts", ontology->graph.size()},
              {"labels", ontology->graph.label_count()},
              {"edges", ontology->graph.edge_count()},
              {"roots", roots}};
    *out_json = copy_out(j.dump());
  });
}

// --- triplets ---------------------------------------------------------------

OS_API void os_triplet_options_init(os_triplet_options* options) {
  if (!options) return;
  *options = {};
  os::SplitRatios defaults;
  options->train_ratio = defaults.train;
  options->dev_ratio = defaults.dev;
  options->test_ratio = defaults.test;
}

OS_API os_status os_triplets_write(const os_ontology* ontology, const os_triplet_options* options,
                                   const char* out_dir, char** out_manifest_json) {
  return guarded([&] {
    require(ontology && options && out_dir, "null argument");
    os::SplitRatios ratios{options->train_ratio, options->dev_ratio, options->test_ratio};
    ratios.validate();
    os::TripletOptions topts{options->single_label_fallback != 0, options->dedup != 0};
    auto dataset = os::generate_triplets(ontology->graph, options->seed, topts);
    auto split = os::split_dataset(dataset, ratios, options->seed);

    fs::path dir(out_dir);
    fs::create_directories(dir);
    os::write_triplets_tsv(dir / "train.tsv", split.train);
    os::write_triplets_tsv(dir / "dev.tsv", split.dev);
    os::write_triplets_tsv(dir / "test.tsv", split.test);

    json manifest = {
        {"seed", options->seed},
        {"single_label_fallback", topts.single_label_fallback},
        {"dedup", topts.dedup},
        {"ratios", {{"train", ratios.train}, {"dev", ratios.dev}, {"test", ratios.test}}},
        {"counts",
         {{"total", dataset.size()},
          {"train", split.train.size()},
          {"dev", split.dev.size()},
          {"test", split.test.size()}}}};
    const std::string text = manifest.dump(2) + "\n";
    std::FILE* f = std::fopen((dir / "manifest.json").c_str(), "wb");
    if (!f) throw os::Error(os::ErrorCode::Io, "cannot write manifest.json");
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    if (out_manifest_json) *out_manifest_json = copy_out(text);
  });
}

// --- training ---------------------------------------------------------------

OS_API void os_train_options_init(os_train_options* options) {
  if (!options) return;
  os::SubwordParams params;
  os::TrainConfig cfg;
  *options = {};
  options->dimension = params.dimension;
  options->buckets = params.bucket_count;
  options->model_seed = params.seed;
  options->epochs = cfg.epochs;
  options->batch_size = cfg.batch_size;
  options->learning_rate = cfg.learning_rate;
  options->margin = cfg.margin;
  options->warmup_fraction = cfg.warmup_fraction;
  options->seed = cfg.seed;
}

OS_API os_status os_train_model(const char* train_tsv, const char* dev_tsv,
                                const os_train_options* options, const char* model_out,
                                char** out_history_json) {
  return guarded([&] {
    require(train_tsv && options && model_out, "null argument");
    auto train_rows = os::read_triplets_tsv(train_tsv);
    std::vector<os::TripletExample> dev_rows;
    if (dev_tsv) dev_rows = os::read_triplets_tsv(dev_tsv);

    os::SubwordParams params;
    params.dimension = options->dimension;
    params.bucket_count = options->buckets;
    params.seed = options->model_seed;
    os::TrainConfig cfg;
    cfg.epochs = options->epochs;
    cfg.batch_size = options->batch_size;
    cfg.learning_rate = options->learning_rate;
    cfg.margin = options->margin;
    cfg.warmup_fraction = options->warmup_fraction;
    cfg.seed = options->seed;
    cfg.validate();

    os::SubwordEmbedder model(params);
    auto history = os::train(model, train_rows, dev_rows, cfg);
    model.save(model_out);

    json epochs = json::array();
    for (const auto& e : history.epochs) {
      epochs.push_back({{"epoch", e.epoch},
                        {"train_loss", e.train_loss},
                        {"dev_loss", e.dev_loss ? json(*e.dev_loss) : json(nullptr)}});
    }
    json j = {{"epochs", std::move(epochs)},
              {"steps", history.steps},
              {"fingerprint", model.fingerprint()}};
    if (out_history_json) *out_history_json = copy_out(j.dump());
  });
}

// --- indexes ----------------------------------------------------------------

OS_API void os_index_options_init(os_index_options* options) {
  if (!options) return;
  *options = {};
  os::Bm25Params params;
  options->k1 = params.k1;
  options->b = params.b;
}

OS_API os_status os_index_build(const os_ontology* ontology, const os_index_options* options,
                                const char* out_dir) {
  return guarded([&] {
    require(ontology && options && out_dir, "null argument");
    os::IndexBuildOptions build;
    switch (options->encoder) {
      case OS_ENCODER_NONE: break;
      case OS_ENCODER_SUBWORD: build.encoder_kind = os::EncoderKind::Subword; break;
      case OS_ENCODER_WORD_VECTORS: build.encoder_kind = os::EncoderKind::WordVectors; break;
      case OS_ENCODER_PRECOMPUTED: build.encoder_kind = os::EncoderKind::Precomputed; break;
      default: throw os::Error(os::ErrorCode::InvalidArgument, "unknown encoder kind");
    }
    if (build.encoder_kind) {
      require(options->encoder_path != nullptr, "encoder path required");
      build.encoder_path = options->encoder_path;
    }
    build.bm25 = options->bm25 != 0;
    build.stopwords_path = optional_path(options->stopwords_path);
    build.bm25_params = {options->k1, options->b};
    os::build_index_dir(ontology->graph, build, out_dir);
  });
}

OS_API os_status os_index_open(const char* dir, os_index** out) {
  return guarded([&] {
    require(dir && out, "null argument");
    *out = nullptr;
    *out = new os_index{os::SearchIndex::open(dir)};
  });
}

OS_API void os_index_free(os_index* index) { delete index; }

OS_API os_status os_index_search(const os_index* index, const char* query, size_t k,
                                 const char* ranker, os_hits_format format, char** out_json) {
  return guarded([&] {
    require(index && query && out_json, "null argument");
    auto r = index->index.ranker(ranker ? ranker : "vector");
    *out_json = copy_out(format_hits(r->search_text(query, k), format));
  });
}

OS_API os_status os_index_match(const os_index* index, const char* const* labels, size_t n_labels,
                                size_t k, const char* ranker, os_hits_format format,
                                char** out_json) {
  return guarded([&] {
    require(index && out_json && (labels || n_labels == 0), "null argument");
    std::vector<std::string> query(labels, labels + n_labels);
    auto r = index->index.ranker(ranker ? ranker : "vector");
    *out_json = copy_out(format_hits(r->search_concept(query, k), format));
  });
}

OS_API os_status os_index_match_ontology(const os_index* index, const os_ontology* source, size_t k,
                                         const char* ranker, char** out_json_lines) {
  return guarded([&] {
    require(index && source && out_json_lines, "null argument");
    auto r = index->index.ranker(ranker ? ranker : "vector");
    std::string out;
    for (const auto& [id, c] : source->graph.concepts()) {
      auto hits = r->search_concept(c.labels, k);
      // Hand-assembled so each candidate keeps the exact bytes of hit_to_json.
      out += "{\"candidates\":" + os::hits_to_json_array(hits) + ",\"source_id\":" + json(id).dump() +
             "}\n";
    }
    *out_json_lines = copy_out(out);
  });
}

OS_API os_status os_index_concept_json(const os_index* index, const char* concept_id,
                                       char** out_json) {
  return guarded([&] {
    require(index && concept_id && out_json, "null argument");
    *out_json = copy_out(index->index.concept_json(concept_id));
  });
}

OS_API os_status os_index_health_json(const os_index* index, char** out_json) {
  return guarded([&] {
    require(index && out_json, "null argument");
    *out_json = copy_out(index->index.health_json());
  });
}

// --- evaluation -------------------------------------------------------------

OS_API void os_eval_options_init(os_eval_options* options) {
  if (options) *options = {};
}

OS_API os_status os_index_evaluate(const os_index* index, const char* queries_path,
                                   const os_eval_options* options, char** out_report_json) {
  return guarded([&] {
    require(index && queries_path && options && out_report_json, "null argument");
    os::EvalOptions eval;
    if (options->k_list && options->k_count > 0) {
      eval.k_list.assign(options->k_list, options->k_list + options->k_count);
    }
    eval.ranker_name = options->ranker ? options->ranker : "vector";
    eval.stopwords = index->index.stopwords();

    auto queries = os::load_queries(queries_path, options->concept_mode ? os::QueryMode::Concept
                                                                        : os::QueryMode::Text);
    auto ranker = index->index.ranker(eval.ranker_name);
    auto report = os::evaluate_run(queries, *ranker, index->index.ontology(), eval);

    const auto stat = options->stat_reciprocal_rank ? os::SignificanceStat::ReciprocalRank
                                                    : os::SignificanceStat::Hits;
    for (std::size_t i = 0; i < options->baseline_count; ++i) {
      fs::path path(options->baseline_reports[i]);
      std::FILE* f = std::fopen(path.c_str(), "rb");
      if (!f) throw os::Error(os::ErrorCode::Io, "cannot open " + path.string());
      std::string text;
      char buf[65536];
      for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, f)) > 0;) text.append(buf, n);
      std::fclose(f);
      auto baseline = os::report_from_json(text);
      os::add_significance(report, baseline, path.filename().string(), stat);
    }
    *out_report_json = copy_out(os::report_to_json(report));
  });
}

}  // extern "C"
