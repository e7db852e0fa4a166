// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>

#include <doctest.h>

#include "msb/config.hpp"
#include "msb/pool_io.hpp"
#include "support/helpers.hpp"

using namespace msb;
using msb::testing::TempDir;

namespace {

Pool sample_pool() {
  Pool p;
  p.provenance["origin"] = "unit test";
  for (int i = 0; i < 4; ++i) {
    Sample s;
    s.id = "p" + std::to_string(i);
    s.image_ref = "img/" + s.id + ".png";
    s.question = "Question number " + std::to_string(i) + " with padding text.";
    s.category = i % 2 == 0 ? "Privacy" : "Bias";
    s.strategy = Strategy::kDependence;
    s.quadrant = Quadrant::kHT;
    s.source = Source::kSynthetic;
    p.samples.push_back(s);
    p.embeddings.push_back(
        Embedding(std::vector<float>{1.0f + i, 2.0f, 3.0f - i}));
  }
  return p;
}

}  // namespace

TEST_CASE("pool round trip with embeddings and provenance") {
  TempDir dir("msb-pool");
  Pool p = sample_pool();
  write_pool(p, dir.file("pool.jsonl"), dir.file("pool.emb"));
  Pool back = read_pool(dir.file("pool.jsonl"), dir.file("pool.emb"));

  REQUIRE(back.samples.size() == 4);
  REQUIRE(back.embeddings.size() == 4);
  CHECK(back.provenance.at("origin") == "unit test");
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(back.samples[i].id == p.samples[i].id);
    CHECK(back.samples[i].question == p.samples[i].question);
    CHECK(back.samples[i].category == p.samples[i].category);
    CHECK(back.samples[i].strategy == p.samples[i].strategy);
    CHECK(back.samples[i].quadrant == p.samples[i].quadrant);
    CHECK(back.samples[i].source == p.samples[i].source);
    CHECK(back.embeddings[i].vector() == p.embeddings[i].vector());
  }
}

TEST_CASE("pool digest is stable and content sensitive") {
  Pool p = sample_pool();
  const std::string d1 = pool_digest(p);
  CHECK(d1 == pool_digest(p));
  CHECK(d1.size() == 64);
  Pool q = p;
  q.samples[0].question += "!";
  CHECK(pool_digest(q) != d1);
}

TEST_CASE("rejection log round trip") {
  TempDir dir("msb-rej");
  std::vector<Rejection> rej = {
      {"a", "short_prompt", "length 10 < 25"},
      {"b", "decode_error", "img/b.png"},
  };
  write_rejections(rej, dir.file("rejections.jsonl"));
  auto back = read_rejections(dir.file("rejections.jsonl"));
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == "a");
  CHECK(back[0].reason == "short_prompt");
  CHECK(back[1].detail == "img/b.png");
}

TEST_CASE("scores round trip") {
  TempDir dir("msb-scores");
  std::vector<SampleScores> scores(2);
  scores[0].sample_id = "p0";
  scores[0].matrix.judge_ids = {"j0", "j1"};
  scores[0].matrix.model_ids = {"m0", "m1", "m2"};
  scores[0].matrix.probs = {{0.9, 0.2, 0.8}, {0.7, 0.1, 0.6}};
  scores[0].matrix.binarize(0.5);
  scores[0].p_h = p_h_from_flags(scores[0].matrix.harm_flags);
  scores[0].c_sep = separability(scores[0].p_h);
  scores[0].c_harm = harmfulness(scores[0].matrix);
  scores[1] = scores[0];
  scores[1].sample_id = "p1";

  write_scores(scores, dir.file("scores.jsonl"));
  auto back = read_scores(dir.file("scores.jsonl"));
  REQUIRE(back.size() == 2);
  CHECK(back[0].sample_id == "p0");
  CHECK(back[0].matrix.probs == scores[0].matrix.probs);
  CHECK(back[0].matrix.harm_flags == scores[0].matrix.harm_flags);
  CHECK(back[0].p_h == scores[0].p_h);
  CHECK(back[0].c_sep == scores[0].c_sep);
  CHECK(back[0].c_harm == scores[0].c_harm);
}

TEST_CASE("build_scored_pool resolves categories and scores") {
  Pool p = sample_pool();
  std::vector<SampleScores> scores(2);
  scores[0].sample_id = "p0";
  scores[0].p_h = 0.5;
  scores[0].c_sep = 1.0;
  scores[0].c_harm = 0.4;
  scores[1].sample_id = "p2";
  scores[1].p_h = 0.25;
  scores[1].c_sep = separability(0.25);
  scores[1].c_harm = 0.6;

  const auto taxonomy = default_categories();
  SamplePool sp = build_scored_pool(p, scores, taxonomy);
  CHECK(sp.size() == 2);  // p1, p3 skipped: no scores
  CHECK(sp.by_id("p0").category == 0);  // Privacy
  CHECK(sp.by_id("p0").c_sep == 1.0);
  CHECK(sp.by_id("p2").embedding.vector() == p.embeddings[2].vector());

  CHECK_THROWS_AS(build_scored_pool(p, scores, taxonomy, false), DataError);
}

TEST_CASE("engine config round trip") {
  TempDir dir("msb-config");
  EngineConfig cfg;
  cfg.seed = 1234;
  cfg.n_max = 111;
  cfg.weights = {0.4, 0.4, 0.2};
  cfg.taxonomy = default_taxonomy();
  cfg.cache_dir = "my-cache";
  cfg.cache_mode = CacheMode::kReplay;
  cfg.harm_lexicon = {"weapon", "steal"};
  cfg.preprocess.min_chars = 30;
  cfg.preprocess.run_resolution_filter = false;
  EndpointConfig judge;
  judge.role = Role::kJudge;
  judge.base_url = "http://localhost:9999/v1";
  judge.model_name = "judge-a";
  judge.auth_ref = "JUDGE_A_KEY";
  judge.judge_adapter = "label";
  cfg.judges = {judge, judge, judge};
  save_config(cfg, dir.file("config.json"));

  EngineConfig back = load_config(dir.file("config.json"), false);
  CHECK(back.seed == 1234);
  CHECK(back.n_max == 111);
  CHECK(back.weights.beta == 0.4);
  CHECK(back.cache_dir == "my-cache");
  CHECK(back.cache_mode == CacheMode::kReplay);
  CHECK(back.harm_lexicon == cfg.harm_lexicon);
  CHECK(back.preprocess.min_chars == 30);
  CHECK_FALSE(back.preprocess.run_resolution_filter);
  REQUIRE(back.judges.size() == 3);
  CHECK(back.judges[0].model_name == "judge-a");
  CHECK(back.judges[0].judge_adapter == "label");
  CHECK(back.judges[0].auth_ref == "JUDGE_A_KEY");
}

TEST_CASE("environment variables override the config file") {
  TempDir dir("msb-config-env");
  EngineConfig cfg;
  cfg.taxonomy = default_taxonomy();
  cfg.seed = 1;
  save_config(cfg, dir.file("config.json"));

  setenv("MSB_SEED", "777", 1);
  setenv("MSB_CACHE_MODE", "record", 1);
  setenv("MSB_CACHE_DIR", "/tmp/override-cache", 1);
  EngineConfig back = load_config(dir.file("config.json"), true);
  unsetenv("MSB_SEED");
  unsetenv("MSB_CACHE_MODE");
  unsetenv("MSB_CACHE_DIR");

  CHECK(back.seed == 777);
  CHECK(back.cache_mode == CacheMode::kRecord);
  CHECK(back.cache_dir == "/tmp/override-cache");
}

TEST_CASE("endpoint auth_ref must name an env var") {
  EndpointConfig ep;
  ep.auth_ref = "MSB_KEY";
  CHECK_NOTHROW(ep.validate());
  ep.auth_ref = "api_key=sk-123";
  CHECK_THROWS_AS(ep.validate(), ConfigError);
}

TEST_CASE("criterion weights must sum to one") {
  const CriterionWeights good{0.5, 0.3, 0.2};
  CHECK_NOTHROW(good.validate());
  const CriterionWeights unbalanced{0.5, 0.3, 0.3};
  CHECK_THROWS_AS(unbalanced.validate(), ConfigError);
  const CriterionWeights negative{-0.1, 0.6, 0.5};
  CHECK_THROWS_AS(negative.validate(), ConfigError);
}

TEST_CASE("enum string round trips") {
  for (auto s : {Strategy::kDependence, Strategy::kComplementarity,
                 Strategy::kConflict, Strategy::kImported})
    CHECK(strategy_from_string(to_string(s)) == s);
  for (auto q : {Quadrant::kHT, Quadrant::kTH, Quadrant::kHH, Quadrant::kTT})
    CHECK(quadrant_from_string(to_string(q)) == q);
  CHECK_THROWS_AS(strategy_from_string("bogus"), ConfigError);
}
