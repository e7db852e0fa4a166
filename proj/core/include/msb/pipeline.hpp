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

#ifndef MSB_PIPELINE_HPP_
#define MSB_PIPELINE_HPP_

#include <string>
#include <vector>

#include "msb/config.hpp"
#include "msb/pool_io.hpp"
#include "msb/selector.hpp"

namespace msb {

struct JudgeRunResult {
  std::vector<SampleScores> scores;
  // Samples excluded because a model response failed or every judge cell
  // for some model was unparseable; never imputed.
  std::vector<std::string> excluded_ids;
  std::vector<std::string> warnings;
};

// Collects responses from every target model for every sample, judges
// them with every judge, binarizes per-model verdicts and derives p_h,
// C_sep and C_harm per sample.
JudgeRunResult judge_pool(const Pool& pool,
                          const std::vector<EndpointConfig>& targets,
                          const std::vector<EndpointConfig>& judges,
                          ModelGateway& gateway, double threshold,
                          std::size_t min_judges);

// Offline end-to-end run over a fixture corpus in Replay mode:
// preprocess -> judge -> select, returning the final benchmark. The
// fixture directory holds config.json, pool.jsonl, pool.emb and the
// replay cache. No network activity.
Benchmark run_replay_pipeline(const std::string& fixture_dir);

// Runs the pipeline twice and checks both hashes against the pinned
// value in <fixture_dir>/expected_manifest_hash.txt (skipped when the
// file is absent). Returns the manifest hash; throws DataError on any
// mismatch.
std::string verify_replay(const std::string& fixture_dir);

}  // namespace msb

#endif  // MSB_PIPELINE_HPP_
