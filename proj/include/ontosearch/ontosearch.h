/*
 * C interface to the ontology search engine.
 *
 * Every fallible call returns an os_status. On failure a message describing
 * the error is available from os_last_error() on the calling thread until the
 * next call into the library. Strings returned through char** out-parameters
 * are owned by the caller and released with os_string_free(). Handles are
 * released with their matching *_free function; passing NULL is a no-op.
 *
 * An os_index is immutable after os_index_open() and may be searched from
 * several threads at once.
 */
#ifndef ONTOSEARCH_H
#define ONTOSEARCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(OS_BUILDING_LIBRARY)
#define OS_API __attribute__((visibility("default")))
#else
#define OS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum os_status {
  OS_OK = 0,

  OS_ERR_DUPLICATE_CONCEPT_ID = 100,
  OS_ERR_UNKNOWN_PARENT_ID = 101,
  OS_ERR_UNKNOWN_CONCEPT_ID = 102,
  OS_ERR_CYCLE_DETECTED = 103,
  OS_ERR_EMPTY_LABEL = 104,
  OS_ERR_DUPLICATE_LABEL = 105,

  OS_ERR_INVALID_RATIOS = 200,

  OS_ERR_DIMENSION_MISMATCH = 300,
  OS_ERR_MISSING_EMBEDDING = 301,
  OS_ERR_EMPTY_DATASET = 302,
  OS_ERR_INCONSISTENT_DIMENSION = 303,
  OS_ERR_INVALID_CONFIG = 304,
  OS_ERR_BAD_MODEL_FILE = 305,

  OS_ERR_EMPTY_QUERY_CONCEPT = 400,
  OS_ERR_MALFORMED_STOPWORD_FILE = 401,
  OS_ERR_BAD_INDEX_FILE = 402,
  OS_ERR_ENCODER_MISMATCH = 403,
  OS_ERR_INVALID_ARGUMENT = 404,
  OS_ERR_UNKNOWN_RANKER = 405,

  OS_ERR_EMPTY_QUERY_AFTER_STOPWORDS = 500,
  OS_ERR_BAD_BUCKET_EDGES = 501,
  OS_ERR_LENGTH_MISMATCH = 502,
  OS_ERR_TOO_FEW_PAIRS = 503,
  OS_ERR_MALFORMED_QUERY_FILE = 504,
  OS_ERR_BAD_REPORT = 505,

  OS_ERR_IO = 900,
  OS_ERR_MALFORMED_LINE = 901,
  OS_ERR_USAGE = 902,
  OS_ERR_INTERNAL = 999
} os_status;

/* Module-qualified status name, e.g. "ontology.CycleDetected". Static storage. */
OS_API const char* os_status_name(os_status status);
/* Message of the last failed call on this thread, or "". */
OS_API const char* os_last_error(void);
OS_API const char* os_version(void);
OS_API void os_string_free(char* s);

/* ------------------------------------------------------------------------ */
/* Ontology                                                                  */

typedef struct os_ontology os_ontology;

/* `labels` and `relations` may be NULL (no synonyms / no hierarchy). */
OS_API os_status os_ontology_load(const char* concepts_path, const char* labels_path,
                                  const char* relations_path, os_ontology** out);
OS_API void os_ontology_free(os_ontology* ontology);
/* {"concepts":n,"edges":n,"labels":n,"roots":n} */
OS_API os_status os_ontology_stats_json(const os_ontology* ontology, char** out_json);

/* ------------------------------------------------------------------------ */
/* Triplet generation                                                        */

typedef struct os_triplet_options {
  uint64_t seed;
  int single_label_fallback;
  int dedup;
  double train_ratio;
  double dev_ratio;
  double test_ratio;
} os_triplet_options;

/* seed 0, no fallback, no dedup, 0.90 / 0.05 / 0.05. */
OS_API void os_triplet_options_init(os_triplet_options* options);

/* Writes train.tsv, dev.tsv, test.tsv and manifest.json into out_dir and
 * returns the manifest text. */
OS_API os_status os_triplets_write(const os_ontology* ontology, const os_triplet_options* options,
                                   const char* out_dir, char** out_manifest_json);

/* ------------------------------------------------------------------------ */
/* Training                                                                  */

typedef struct os_train_options {
  size_t dimension;
  size_t buckets;
  uint64_t model_seed;
  int epochs;
  size_t batch_size;
  double learning_rate;
  double margin;
  double warmup_fraction;
  uint64_t seed;
} os_train_options;

/* d 64, 65536 buckets, 5 epochs, batch 32, lr 2e-5, margin 0.1, warm-up 0.1. */
OS_API void os_train_options_init(os_train_options* options);

/* dev_tsv may be NULL. Writes the trained subword model to model_out and
 * returns the per-epoch loss history as JSON. */
OS_API os_status os_train_model(const char* train_tsv, const char* dev_tsv,
                                const os_train_options* options, const char* model_out,
                                char** out_history_json);

/* ------------------------------------------------------------------------ */
/* Indexes and search                                                        */

typedef enum os_encoder_kind {
  OS_ENCODER_NONE = 0,
  OS_ENCODER_SUBWORD = 1,
  OS_ENCODER_WORD_VECTORS = 2,
  OS_ENCODER_PRECOMPUTED = 3
} os_encoder_kind;

typedef struct os_index_options {
  os_encoder_kind encoder;
  const char* encoder_path;
  int bm25;
  const char* stopwords_path; /* NULL: bundled English list */
  double k1;
  double b;
} os_index_options;

/* No encoder, no BM25, k1 1.2, b 0.75. */
OS_API void os_index_options_init(os_index_options* options);
OS_API os_status os_index_build(const os_ontology* ontology, const os_index_options* options,
                                const char* out_dir);

typedef struct os_index os_index;

OS_API os_status os_index_open(const char* dir, os_index** out);
OS_API void os_index_free(os_index* index);

typedef enum os_hits_format {
  OS_HITS_ARRAY = 0, /* one JSON array */
  OS_HITS_LINES = 1  /* one JSON object per line; same object bytes */
} os_hits_format;

/* ranker: "vector" or "bm25". */
OS_API os_status os_index_search(const os_index* index, const char* query, size_t k,
                                 const char* ranker, os_hits_format format, char** out_json);
OS_API os_status os_index_match(const os_index* index, const char* const* labels, size_t n_labels,
                                size_t k, const char* ranker, os_hits_format format,
                                char** out_json);
/* One line per source concept: {"candidates":[...],"source_id":"..."} */
OS_API os_status os_index_match_ontology(const os_index* index, const os_ontology* source, size_t k,
                                         const char* ranker, char** out_json_lines);
OS_API os_status os_index_concept_json(const os_index* index, const char* concept_id,
                                       char** out_json);
OS_API os_status os_index_health_json(const os_index* index, char** out_json);

/* ------------------------------------------------------------------------ */
/* Evaluation                                                                */

typedef struct os_eval_options {
  const size_t* k_list; /* NULL: {1, 5, 10} */
  size_t k_count;
  const char* ranker;   /* NULL: "vector" */
  int concept_mode;     /* query file holds label lists */
  const char* const* baseline_reports;
  size_t baseline_count;
  int stat_reciprocal_rank; /* 0: Hits@K indicators, 1: reciprocal rank */
} os_eval_options;

OS_API void os_eval_options_init(os_eval_options* options);
OS_API os_status os_index_evaluate(const os_index* index, const char* queries_path,
                                   const os_eval_options* options, char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* ONTOSEARCH_H */
