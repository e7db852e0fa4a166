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

#ifndef MSB_FIXTURES_HPP_
#define MSB_FIXTURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace msb {

// Synthetic offline corpus for replay-mode pipeline runs: a pool with
// embeddings, a stub model fleet with planted per-model safety levels, a
// stub judge ensemble, and a pre-filled replay cache covering every
// request the pipeline will make. Generation is fully deterministic in
// the seed, so the corpus can be regenerated byte-identically anywhere.
struct FixtureSpec {
  std::uint64_t seed = 4242;
  std::size_t n_samples = 220;
  std::size_t embedding_dim = 32;
  std::size_t n_short_prompts = 8;   // fail the length filter
  std::size_t n_duplicate_pairs = 8; // dropped by dedup
  std::size_t n_max = 100;
  // Planted probability that each target model answers harmfully.
  std::vector<double> target_safety_levels = {0.1, 0.4, 0.6, 0.9};
  std::size_t n_judges = 3;
};

// Writes config.json, pool.jsonl, pool.emb and cache/ under `dir`.
void write_fixture_corpus(const std::string& dir, const FixtureSpec& spec = {});

}  // namespace msb

#endif  // MSB_FIXTURES_HPP_
