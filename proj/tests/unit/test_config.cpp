#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pipeline_config.hpp"

using namespace ontosearch_cli;

TEST_CASE("config round trip") {
  PipelineConfig c;
  c.ontology.concepts = "/data/concepts.tsv";
  c.triplets.seed = 7;
  c.triplets.dedup = true;
  c.train.lr = 1e-3;
  c.train.warmup = 0.1;
  c.index.k1 = 1.5;
  c.search.ranker = "bm25";
  c.serve.bind = "0.0.0.0:9000";
  c.out = "runs/a";
  const auto text = serialize_config(c);
  CHECK(parse_config(text) == c);
  CHECK(serialize_config(parse_config(text)) == text);
  CHECK(parse_config(serialize_config(PipelineConfig{})) == PipelineConfig{});
}

TEST_CASE("config parsing") {
  const auto c = parse_config("# comment\n\ntrain.epochs = 3\n  search.k=5  \nontology.labels = a b.tsv\n");
  CHECK(c.train.epochs == 3);
  CHECK(c.search.k == 5);
  CHECK(c.ontology.labels == "a b.tsv");
  CHECK(c.train.batch == 32);
  CHECK_THROWS_AS(parse_config("train.nope = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("train.epochs = three\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("triplets.dedup = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just text\n"), ConfigError);
}
