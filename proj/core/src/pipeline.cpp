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

#include "msb/pipeline.hpp"

#include <algorithm>
#include <filesystem>

#include "msb/criteria.hpp"
#include "msb/preprocess.hpp"
#include "msb/util.hpp"

namespace msb {
namespace {
namespace fs = std::filesystem;
}

JudgeRunResult judge_pool(const Pool& pool,
                          const std::vector<EndpointConfig>& targets,
                          const std::vector<EndpointConfig>& judges,
                          ModelGateway& gateway, double threshold,
                          std::size_t min_judges) {
  if (targets.empty()) throw ConfigError("judge_pool needs target models");
  if (judges.size() < min_judges)
    throw ConfigError("need at least " + std::to_string(min_judges) +
                      " judges, have " + std::to_string(judges.size()));

  JudgeRunResult out;
  for (const auto& s : pool.samples) {
    SampleScores scores;
    scores.sample_id = s.id;
    for (const auto& j : judges) scores.matrix.judge_ids.push_back(j.model_name);
    for (const auto& t : targets) scores.matrix.model_ids.push_back(t.model_name);
    scores.matrix.probs.assign(judges.size(),
                               std::vector<double>(targets.size(), 0.0));

    bool excluded = false;
    std::vector<std::string> responses(targets.size());
    for (std::size_t j = 0; j < targets.size() && !excluded; ++j) {
      try {
        responses[j] = gateway.chat(targets[j], s.question, s.image_ref);
      } catch (const GatewayError& e) {
        out.warnings.push_back("sample " + s.id + " excluded: target " +
                               targets[j].model_name + " failed: " + e.what());
        excluded = true;
      }
    }
    for (std::size_t i = 0; i < judges.size() && !excluded; ++i) {
      for (std::size_t j = 0; j < targets.size() && !excluded; ++j) {
        try {
          scores.matrix.probs[i][j] = gateway.judge(
              judges[i], s.question, s.image_ref, responses[j]);
        } catch (const JudgeParseError& e) {
          // A missing cell would bias p_h; the sample is excluded.
          out.warnings.push_back("sample " + s.id + " excluded: judge " +
                                 judges[i].model_name + ": " + e.what());
          excluded = true;
        }
      }
    }
    if (excluded) {
      out.excluded_ids.push_back(s.id);
      continue;
    }
    scores.matrix.binarize(threshold);
    scores.p_h = p_h_from_flags(scores.matrix.harm_flags);
    scores.c_sep = separability(scores.p_h);
    scores.c_harm = harmfulness(scores.matrix);
    out.scores.push_back(std::move(scores));
  }
  return out;
}

Benchmark run_replay_pipeline(const std::string& fixture_dir) {
  const fs::path dir(fixture_dir);
  EngineConfig cfg = load_config((dir / "config.json").string(),
                                 /*apply_env=*/false);
  // The fixture cache path is relative to the fixture directory.
  fs::path cache = cfg.cache_dir;
  if (cache.is_relative()) cache = dir / cache;
  ModelGateway gateway(cache.string(), CacheMode::kReplay);

  Pool pool = read_pool((dir / "pool.jsonl").string(),
                        (dir / "pool.emb").string());

  PreprocessResult pre = preprocess_pipeline(
      pool, cfg.preprocess, &gateway, &cfg.embedder, &cfg.generator,
      cfg.taxonomy);

  JudgeRunResult judged =
      judge_pool(pre.pool, cfg.targets, cfg.judges, gateway,
                 cfg.binarization_threshold, cfg.min_judges);

  SamplePool scored = build_scored_pool(pre.pool, judged.scores,
                                        cfg.taxonomy.categories);
  SelectOptions opts;
  opts.pool_digest = pool_digest(pre.pool);
  opts.engine_version = kEngineVersion;
  opts.seed = cfg.seed;
  return select(scored, cfg.weights, cfg.n_max,
                cfg.taxonomy.categories.size(), opts);
}

std::string verify_replay(const std::string& fixture_dir) {
  const Benchmark first = run_replay_pipeline(fixture_dir);
  const Benchmark second = run_replay_pipeline(fixture_dir);
  if (first.manifest_hash != second.manifest_hash)
    throw DataError("replay pipeline is not deterministic: " +
                    first.manifest_hash + " vs " + second.manifest_hash);
  const fs::path pin = fs::path(fixture_dir) / "expected_manifest_hash.txt";
  if (fs::exists(pin)) {
    std::string expected = read_file(pin.string());
    while (!expected.empty() &&
           (expected.back() == '\n' || expected.back() == '\r'))
      expected.pop_back();
    if (expected != first.manifest_hash)
      throw DataError("manifest hash mismatch: expected " + expected +
                      ", got " + first.manifest_hash);
  }
  return first.manifest_hash;
}

}  // namespace msb
