#include "pipeline_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

namespace ontosearch_cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
void parse_number(std::string_view key, std::string_view value, T& out) {
  T parsed{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, parsed);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value for " + std::string(key) + ": " + std::string(value));
  }
  out = parsed;
}

void parse_bool(std::string_view key, std::string_view value, bool& out) {
  if (value == "true" || value == "1") {
    out = true;
  } else if (value == "false" || value == "0") {
    out = false;
  } else {
    throw ConfigError("bad value for " + std::string(key) + ": " + std::string(value));
  }
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// One entry per key: how to read it and how to print it.
struct Field {
  const char* key;
  std::function<void(PipelineConfig&, std::string_view)> read;
  std::function<std::string(const PipelineConfig&)> write;
};

#define STRING_FIELD(name, member)                                                  \
  Field{name, [](PipelineConfig& c, std::string_view v) { c.member = std::string(v); }, \
        [](const PipelineConfig& c) { return c.member; }}
#define NUMBER_FIELD(name, member)                                                           \
  Field{name, [](PipelineConfig& c, std::string_view v) { parse_number(name, v, c.member); }, \
        [](const PipelineConfig& c) { return std::to_string(c.member); }}
#define DOUBLE_FIELD(name, member)                                                           \
  Field{name, [](PipelineConfig& c, std::string_view v) { parse_number(name, v, c.member); }, \
        [](const PipelineConfig& c) { return format_double(c.member); }}
#define BOOL_FIELD(name, member)                                                           \
  Field{name, [](PipelineConfig& c, std::string_view v) { parse_bool(name, v, c.member); }, \
        [](const PipelineConfig& c) { return std::string(c.member ? "true" : "false"); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      STRING_FIELD("ontology.concepts", ontology.concepts),
      STRING_FIELD("ontology.labels", ontology.labels),
      STRING_FIELD("ontology.relations", ontology.relations),
      NUMBER_FIELD("triplets.seed", triplets.seed),
      BOOL_FIELD("triplets.single_label_fallback", triplets.single_label_fallback),
      BOOL_FIELD("triplets.dedup", triplets.dedup),
      DOUBLE_FIELD("triplets.train", triplets.train),
      DOUBLE_FIELD("triplets.dev", triplets.dev),
      DOUBLE_FIELD("triplets.test", triplets.test),
      NUMBER_FIELD("train.dim", train.dim),
      NUMBER_FIELD("train.buckets", train.buckets),
      NUMBER_FIELD("train.model_seed", train.model_seed),
      NUMBER_FIELD("train.epochs", train.epochs),
      NUMBER_FIELD("train.batch", train.batch),
      DOUBLE_FIELD("train.lr", train.lr),
      DOUBLE_FIELD("train.margin", train.margin),
      DOUBLE_FIELD("train.warmup", train.warmup),
      NUMBER_FIELD("train.seed", train.seed),
      STRING_FIELD("index.stopwords", index.stopwords),
      STRING_FIELD("index.word_vectors", index.word_vectors),
      STRING_FIELD("index.precomputed", index.precomputed),
      DOUBLE_FIELD("index.k1", index.k1),
      DOUBLE_FIELD("index.b", index.b),
      NUMBER_FIELD("search.k", search.k),
      STRING_FIELD("search.ranker", search.ranker),
      STRING_FIELD("serve.bind", serve.bind),
      STRING_FIELD("out", out),
  };
  return all;
}

}  // namespace

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    bool known = false;
    for (const auto& f : fields()) {
      if (key == f.key) {
        f.read(config, value);
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key " + std::string(key));
    }
  }
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const PipelineConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.write(config);
    out += '\n';
  }
  return out;
}

}  // namespace ontosearch_cli
