// ontosearch command-line driver. Talks to the engine only through the C API.
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "ontosearch/ontosearch.h"
#include "pipeline_config.hpp"

namespace fs = std::filesystem;
using ontosearch_cli::PipelineConfig;

namespace {

// Failure carrying a library status; printed as one machine-parsable line.
struct CommandError {
  os_status status;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& message) { throw CommandError{OS_ERR_USAGE, message}; }

void check(os_status status) {
  if (status != OS_OK) throw CommandError{status, os_last_error()};
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { os_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct OntologyHandle {
  os_ontology* p = nullptr;
  ~OntologyHandle() { os_ontology_free(p); }
};

struct IndexHandle {
  os_index* p = nullptr;
  ~IndexHandle() { os_index_free(p); }
};

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) usage_error(std::string(flag) + " is required");
  if (!fs::exists(path)) usage_error(std::string(flag) + ": no such file: " + path);
}

const char* optional_file(const std::string& path, const char* flag) {
  if (path.empty()) return nullptr;
  require_file(path, flag);
  return path.c_str();
}

void load_ontology(const std::string& concepts, const std::string& labels,
                   const std::string& relations, OntologyHandle& out, const char* prefix = "--") {
  const std::string p(prefix);
  require_file(concepts, (p + "concepts").c_str());
  check(os_ontology_load(concepts.c_str(), optional_file(labels, (p + "labels").c_str()),
                         optional_file(relations, (p + "relations").c_str()), &out.p));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
    throw CommandError{OS_ERR_IO, "cannot write " + path};
  }
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> ks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::size_t k = 0;
    const char* b = text.data() + pos;
    const char* e = text.data() + comma;
    auto [ptr, ec] = std::from_chars(b, e, k);
    if (ec != std::errc() || ptr != e || k == 0) usage_error("--k: bad list " + text);
    ks.push_back(k);
    pos = comma + 1;
  }
  return ks;
}

// --- serve ------------------------------------------------------------------

int http_status_for(os_status status) {
  switch (status) {
    case OS_ERR_UNKNOWN_CONCEPT_ID: return 404;
    case OS_ERR_IO:
    case OS_ERR_INTERNAL: return 500;
    default: return 400;
  }
}

void send_error(httplib::Response& res, int http_status, const std::string& code,
                const std::string& message) {
  nlohmann::json body = {{"error", code}, {"message", message}};
  res.status = http_status;
  res.set_content(body.dump(), "application/json");
}

void send_status_error(httplib::Response& res, os_status status) {
  send_error(res, http_status_for(status), os_status_name(status), os_last_error());
}

bool parse_k(const std::string& text, std::size_t& k) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, k);
  return ec == std::errc() && ptr == end && k > 0;
}

int run_serve(const std::string& index_dir, const std::string& bind, const PipelineConfig& cfg) {
  require_file(index_dir, "--index");
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) usage_error("--bind expects host:port");
  const std::string host = bind.substr(0, colon);
  int port = 0;
  {
    const std::string port_text = bind.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port < 0 || port > 65535) {
      usage_error("--bind: bad port " + port_text);
    }
  }

  // Loaded in the background; requests see 503 until it is published.
  std::atomic<os_index*> index{nullptr};
  std::atomic<bool> load_failed{false};
  std::string load_error;

  httplib::Server server;

  auto ready = [&](httplib::Response& res) -> const os_index* {
    const os_index* idx = index.load(std::memory_order_acquire);
    if (!idx) {
      send_error(res, 503, load_failed ? "index.LoadFailed" : "index.Loading",
                 load_failed ? load_error : "index is loading");
    }
    return idx;
  };

  server.Get("/healthz", [&](const httplib::Request&, httplib::Response& res) {
    const os_index* idx = ready(res);
    if (!idx) return;
    OwnedString out;
    if (os_index_health_json(idx, &out.p) != OS_OK) return send_status_error(res, OS_ERR_INTERNAL);
    res.set_content(out.str(), "application/json");
  });

  server.Get("/search", [&](const httplib::Request& req, httplib::Response& res) {
    const os_index* idx = ready(res);
    if (!idx) return;
    if (!req.has_param("q")) return send_error(res, 400, "app.UsageError", "missing parameter q");
    std::size_t k = cfg.search.k;
    if (req.has_param("k") && !parse_k(req.get_param_value("k"), k)) {
      return send_error(res, 400, "app.UsageError", "k must be a positive integer");
    }
    const std::string ranker = req.has_param("ranker") ? req.get_param_value("ranker") : cfg.search.ranker;
    const std::string q = req.get_param_value("q");
    OwnedString out;
    const os_status st = os_index_search(idx, q.c_str(), k, ranker.c_str(), OS_HITS_ARRAY, &out.p);
    if (st != OS_OK) return send_status_error(res, st);
    res.set_content(out.str(), "application/json");
  });

  server.Post("/match", [&](const httplib::Request& req, httplib::Response& res) {
    const os_index* idx = ready(res);
    if (!idx) return;
    auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("labels") ||
        !body["labels"].is_array()) {
      return send_error(res, 400, "app.UsageError", "body must be {\"labels\":[...], \"k\":n}");
    }
    std::vector<std::string> labels;
    for (const auto& l : body["labels"]) {
      if (!l.is_string()) return send_error(res, 400, "app.UsageError", "labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    std::size_t k = cfg.search.k;
    if (body.contains("k")) {
      if (!body["k"].is_number_unsigned() || body["k"].get<std::size_t>() == 0) {
        return send_error(res, 400, "app.UsageError", "k must be a positive integer");
      }
      k = body["k"].get<std::size_t>();
    }
    std::string ranker = cfg.search.ranker;
    if (body.contains("ranker")) {
      if (!body["ranker"].is_string()) return send_error(res, 400, "app.UsageError", "ranker must be a string");
      ranker = body["ranker"].get<std::string>();
    }
    std::vector<const char*> ptrs;
    for (const auto& l : labels) ptrs.push_back(l.c_str());
    OwnedString out;
    const os_status st =
        os_index_match(idx, ptrs.data(), ptrs.size(), k, ranker.c_str(), OS_HITS_ARRAY, &out.p);
    if (st != OS_OK) return send_status_error(res, st);
    res.set_content(out.str(), "application/json");
  });

  server.Get(R"(/concept/(.+))", [&](const httplib::Request& req, httplib::Response& res) {
    const os_index* idx = ready(res);
    if (!idx) return;
    const std::string id = req.matches[1];
    OwnedString out;
    const os_status st = os_index_concept_json(idx, id.c_str(), &out.p);
    if (st != OS_OK) return send_status_error(res, st);
    res.set_content(out.str(), "application/json");
  });

  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw CommandError{OS_ERR_IO, "cannot bind " + bind};

  std::thread loader([&] {
    os_index* idx = nullptr;
    if (os_index_open(index_dir.c_str(), &idx) == OS_OK) {
      index.store(idx, std::memory_order_release);
      std::cerr << "index loaded from " << index_dir << "\n";
    } else {
      load_error = os_last_error();
      load_failed = true;
      std::cerr << "error: index load failed: " << load_error << "\n";
    }
  });

  std::cout << "listening on " << host << ":" << bound << std::endl;
  const bool ok = server.listen_after_bind();
  loader.join();
  os_index_free(index.load());
  return ok ? 0 : 1;
}

// Picks up --config before CLI11 runs so flags can override file values.
std::string find_config_arg(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string_view a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return std::string(a.substr(9));
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  PipelineConfig cfg;
  std::string config_path;
  try {
    config_path = find_config_arg(argc, argv);
    if (!config_path.empty()) cfg = ontosearch_cli::load_config(config_path);
  } catch (const ontosearch_cli::ConfigError& e) {
    std::cerr << "error: app.UsageError: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Ontology concept search: triplet training, indexing, search and evaluation"};
  app.set_version_flag("--version", std::string(os_version()));
  app.add_option("--config", config_path, "Flat key = value config file; flags override it");
  app.require_subcommand(1);

  auto add_ontology_flags = [&](CLI::App* sub) {
    sub->add_option("--concepts", cfg.ontology.concepts, "concepts.tsv (id, preferred label)");
    sub->add_option("--labels", cfg.ontology.labels, "labels.tsv (id, synonym)");
    sub->add_option("--relations", cfg.ontology.relations, "relations.tsv (child, parent)");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate an ontology and print its statistics");
  add_ontology_flags(ingest);

  auto* triplets = app.add_subcommand("triplets", "Generate and split training triplets");
  add_ontology_flags(triplets);
  triplets->add_option("--seed", cfg.triplets.seed);
  triplets->add_option("--out", cfg.out, "Output directory");
  triplets->add_flag("--single-label-fallback", cfg.triplets.single_label_fallback);
  triplets->add_flag("--dedup", cfg.triplets.dedup);
  triplets->add_option("--train-ratio", cfg.triplets.train);
  triplets->add_option("--dev-ratio", cfg.triplets.dev);
  triplets->add_option("--test-ratio", cfg.triplets.test);

  std::string train_path, dev_path;
  auto* train = app.add_subcommand("train", "Train the subword encoder with triplet loss");
  train->add_option("--triplets", train_path, "train.tsv, or a directory written by `triplets`");
  train->add_option("--dev", dev_path, "dev.tsv");
  train->add_option("--dim", cfg.train.dim);
  train->add_option("--buckets", cfg.train.buckets);
  train->add_option("--model-seed", cfg.train.model_seed, "Seed of the initial table");
  train->add_option("--epochs", cfg.train.epochs);
  train->add_option("--batch", cfg.train.batch);
  train->add_option("--lr", cfg.train.lr);
  train->add_option("--margin", cfg.train.margin);
  train->add_option("--warmup", cfg.train.warmup, "Warm-up fraction of all steps");
  train->add_option("--seed", cfg.train.seed, "Shuffle seed");
  train->add_option("--out", cfg.out, "Model file");

  std::string model_path;
  bool with_bm25 = false;
  auto* index = app.add_subcommand("index", "Build a vector and/or BM25 index directory");
  add_ontology_flags(index);
  auto* model_opt = index->add_option("--model", model_path, "Trained subword model");
  auto* wv_opt = index->add_option("--word-vectors", cfg.index.word_vectors, "Word-vector text file");
  auto* pre_opt = index->add_option("--precomputed", cfg.index.precomputed, "text<TAB>vector file");
  model_opt->excludes(wv_opt)->excludes(pre_opt);
  wv_opt->excludes(pre_opt);
  index->add_flag("--bm25", with_bm25, "Also build a BM25 index");
  index->add_option("--stopwords", cfg.index.stopwords);
  index->add_option("--k1", cfg.index.k1);
  index->add_option("--b", cfg.index.b);
  index->add_option("--out", cfg.out, "Index directory");

  std::string index_dir, query_text;
  auto* query = app.add_subcommand("query", "Search an index; prints one JSON hit per line");
  query->add_option("--index", index_dir)->required();
  query->add_option("--q", query_text)->required();
  query->add_option("--k", cfg.search.k);
  query->add_option("--ranker", cfg.search.ranker);

  std::string src_concepts, src_labels, src_relations;
  auto* match = app.add_subcommand("match", "Map every concept of a source ontology to index concepts");
  match->add_option("--index", index_dir)->required();
  match->add_option("--source-concepts", src_concepts)->required();
  match->add_option("--source-labels", src_labels);
  match->add_option("--source-relations", src_relations);
  match->add_option("--k", cfg.search.k);
  match->add_option("--ranker", cfg.search.ranker);

  std::string queries_path, k_list = "1,5,10", mode = "text", stat = "hits";
  std::vector<std::string> baselines;
  auto* eval = app.add_subcommand("eval", "Evaluate a query set; prints the report JSON");
  eval->add_option("--index", index_dir)->required();
  eval->add_option("--queries", queries_path)->required();
  eval->add_option("--k", k_list, "Comma-separated cut-offs");
  eval->add_option("--mode", mode)->check(CLI::IsMember({"text", "concept"}));
  eval->add_option("--ranker", cfg.search.ranker);
  eval->add_option("--baseline-run", baselines, "Report of another run for a paired t-test");
  eval->add_option("--stat", stat)->check(CLI::IsMember({"hits", "rr"}));
  eval->add_option("--out", cfg.out, "Report file (default stdout)");

  auto* serve = app.add_subcommand("serve", "Serve read-only JSON search endpoints");
  serve->add_option("--index", index_dir)->required();
  serve->add_option("--bind", cfg.serve.bind, "host:port (port 0 picks a free one)");
  serve->add_option("--k", cfg.search.k, "Default k");
  serve->add_option("--ranker", cfg.search.ranker, "Default ranker");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: " << os_status_name(OS_ERR_USAGE) << ": " << msg << "\n";
    return 2;
  }

  try {
    if (*ingest) {
      OntologyHandle onto;
      load_ontology(cfg.ontology.concepts, cfg.ontology.labels, cfg.ontology.relations, onto);
      OwnedString stats;
      check(os_ontology_stats_json(onto.p, &stats.p));
      std::cout << stats.str() << "\n";
    } else if (*triplets) {
      if (cfg.out.empty()) usage_error("--out is required");
      OntologyHandle onto;
      load_ontology(cfg.ontology.concepts, cfg.ontology.labels, cfg.ontology.relations, onto);
      os_triplet_options opts;
      os_triplet_options_init(&opts);
      opts.seed = cfg.triplets.seed;
      opts.single_label_fallback = cfg.triplets.single_label_fallback;
      opts.dedup = cfg.triplets.dedup;
      opts.train_ratio = cfg.triplets.train;
      opts.dev_ratio = cfg.triplets.dev;
      opts.test_ratio = cfg.triplets.test;
      OwnedString manifest;
      check(os_triplets_write(onto.p, &opts, cfg.out.c_str(), &manifest.p));
      std::cout << manifest.str();
    } else if (*train) {
      if (cfg.out.empty()) usage_error("--out is required");
      require_file(train_path, "--triplets");
      if (fs::is_directory(train_path)) {
        const fs::path dir(train_path);
        if (dev_path.empty() && fs::exists(dir / "dev.tsv")) dev_path = (dir / "dev.tsv").string();
        train_path = (dir / "train.tsv").string();
        require_file(train_path, "--triplets");
      }
      os_train_options opts;
      os_train_options_init(&opts);
      opts.dimension = cfg.train.dim;
      opts.buckets = cfg.train.buckets;
      opts.model_seed = cfg.train.model_seed;
      opts.epochs = cfg.train.epochs;
      opts.batch_size = cfg.train.batch;
      opts.learning_rate = cfg.train.lr;
      opts.margin = cfg.train.margin;
      opts.warmup_fraction = cfg.train.warmup;
      opts.seed = cfg.train.seed;
      OwnedString history;
      check(os_train_model(train_path.c_str(), optional_file(dev_path, "--dev"), &opts, cfg.out.c_str(),
                           &history.p));
      std::cout << history.str() << "\n";
    } else if (*index) {
      if (cfg.out.empty()) usage_error("--out is required");
      OntologyHandle onto;
      load_ontology(cfg.ontology.concepts, cfg.ontology.labels, cfg.ontology.relations, onto);
      os_index_options opts;
      os_index_options_init(&opts);
      // Explicit flags win over an encoder named in the config file.
      if (!model_path.empty()) {
        opts.encoder = OS_ENCODER_SUBWORD;
        opts.encoder_path = optional_file(model_path, "--model");
      } else if (*wv_opt || (!*pre_opt && !cfg.index.word_vectors.empty())) {
        opts.encoder = OS_ENCODER_WORD_VECTORS;
        opts.encoder_path = optional_file(cfg.index.word_vectors, "--word-vectors");
      } else if (!cfg.index.precomputed.empty()) {
        opts.encoder = OS_ENCODER_PRECOMPUTED;
        opts.encoder_path = optional_file(cfg.index.precomputed, "--precomputed");
      }
      opts.bm25 = with_bm25;
      opts.stopwords_path = optional_file(cfg.index.stopwords, "--stopwords");
      opts.k1 = cfg.index.k1;
      opts.b = cfg.index.b;
      check(os_index_build(onto.p, &opts, cfg.out.c_str()));
      IndexHandle built;
      check(os_index_open(cfg.out.c_str(), &built.p));
      OwnedString health;
      check(os_index_health_json(built.p, &health.p));
      std::cout << health.str() << "\n";
    } else if (*query) {
      require_file(index_dir, "--index");
      IndexHandle idx;
      check(os_index_open(index_dir.c_str(), &idx.p));
      OwnedString hits;
      check(os_index_search(idx.p, query_text.c_str(), cfg.search.k, cfg.search.ranker.c_str(),
                            OS_HITS_LINES, &hits.p));
      std::cout << hits.str();
    } else if (*match) {
      require_file(index_dir, "--index");
      IndexHandle idx;
      check(os_index_open(index_dir.c_str(), &idx.p));
      OntologyHandle source;
      load_ontology(src_concepts, src_labels, src_relations, source, "--source-");
      OwnedString lines;
      check(os_index_match_ontology(idx.p, source.p, cfg.search.k, cfg.search.ranker.c_str(), &lines.p));
      std::cout << lines.str();
    } else if (*eval) {
      require_file(index_dir, "--index");
      require_file(queries_path, "--queries");
      for (const auto& b : baselines) require_file(b, "--baseline-run");
      const auto ks = parse_k_list(k_list);
      std::vector<const char*> baseline_ptrs;
      for (const auto& b : baselines) baseline_ptrs.push_back(b.c_str());
      IndexHandle idx;
      check(os_index_open(index_dir.c_str(), &idx.p));
      os_eval_options opts;
      os_eval_options_init(&opts);
      opts.k_list = ks.data();
      opts.k_count = ks.size();
      opts.ranker = cfg.search.ranker.c_str();
      opts.concept_mode = mode == "concept";
      opts.baseline_reports = baseline_ptrs.data();
      opts.baseline_count = baseline_ptrs.size();
      opts.stat_reciprocal_rank = stat == "rr";
      OwnedString report;
      check(os_index_evaluate(idx.p, queries_path.c_str(), &opts, &report.p));
      write_output(cfg.out, report.str());
    } else if (*serve) {
      return run_serve(index_dir, cfg.serve.bind, cfg);
    }
  } catch (const CommandError& e) {
    std::string msg = e.message;
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: " << os_status_name(e.status) << ": " << msg << "\n";
    return e.status == OS_ERR_USAGE ? 2 : 1;
  }
  return 0;
}
