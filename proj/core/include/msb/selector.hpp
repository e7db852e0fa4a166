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

#ifndef MSB_SELECTOR_HPP_
#define MSB_SELECTOR_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "msb/criteria.hpp"
#include "msb/types.hpp"

namespace msb {

// A pool sample ready for selection: separability and harmfulness are
// selection-invariant and precomputed; only diversity depends on the
// partial selection.
struct ScoredSample {
  std::string id;
  std::size_t category = 0;  // index into the taxonomy
  Embedding embedding;
  double p_h = 0.0;
  double c_sep = 0.0;
  double c_harm = 0.0;
};

// Id-indexed view over a scored pool.
class SamplePool {
 public:
  SamplePool() = default;
  explicit SamplePool(std::vector<ScoredSample> samples);

  const std::vector<ScoredSample>& samples() const { return samples_; }
  bool contains(const std::string& id) const;
  // Throws DataError naming the id when unresolvable.
  const ScoredSample& by_id(const std::string& id) const;
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<ScoredSample> samples_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct BenchmarkEntry {
  std::string sample_id;
  std::size_t insertion_step = 0;  // 1-based, contiguous
  CriterionScores scores;          // as computed at insertion time
};

struct Benchmark {
  std::vector<BenchmarkEntry> entries;
  CriterionWeights weights;
  std::size_t n_max = 0;
  std::size_t n_categories = 0;
  std::string pool_digest;
  std::string engine_version;
  std::uint64_t seed = 0;
  std::string parent_manifest_hash;  // provenance chain; empty at the root
  std::string manifest_hash;         // SHA-256 of manifest_bytes()
};

// Canonical line-delimited manifest: one header record then one record
// per entry, each a JSON object with sorted keys. manifest_hash is the
// SHA-256 of exactly these bytes.
std::string manifest_bytes(const Benchmark& b);
void finalize_manifest_hash(Benchmark& b);
void write_manifest(const Benchmark& b, const std::string& path);
Benchmark read_manifest(const std::string& path);

// Mutable greedy state, exposed for auditing.
struct SelectionState {
  std::vector<std::string> selected_ids;
  std::vector<std::size_t> category_counts;
  // Selected embeddings as given by the pool; cosine distances are
  // scale-invariant, so no normalized copy is exposed.
  std::vector<Embedding> selected_embeddings;
  // Per pool index: current min cosine distance to the selected set;
  // meaningful only while remaining[i] is true.
  std::vector<double> cached_nn_dist;
  std::vector<char> remaining;
  std::size_t step = 0;
};

// Snapshot handed to the observer after each insertion commits.
struct SelectionStep {
  std::size_t step = 0;           // 1-based
  std::size_t chosen_index = 0;   // pool index of the inserted sample
  // Combined scores at the pre-insertion state, indexed by pool index;
  // valid where remaining_before[i] is true.
  const std::vector<double>* scores_before = nullptr;
  const std::vector<char>* remaining_before = nullptr;
  const SelectionState* state_after = nullptr;
};
using SelectionObserver = std::function<void(const SelectionStep&)>;

struct SelectOptions {
  std::string pool_digest;
  std::string engine_version = "msbench-0.1.0";
  std::uint64_t seed = 0;
  std::string parent_manifest_hash;
  SelectionObserver observer;  // optional, test/audit hook
};

// Ties within this score window resolve to the lexicographically
// smallest sample id.
inline constexpr double kTieEpsilon = 1e-12;

// Greedy iterative selection: repeatedly insert the remaining sample
// maximizing alpha*c_sep + beta*c_harm + gamma*c_div against the current
// selection, until min(n_max, |pool|) samples are chosen. Entries record
// insertion-time scores.
Benchmark select(const SamplePool& pool, const CriterionWeights& w,
                 std::size_t n_max, std::size_t n_categories,
                 const SelectOptions& opts = {});

// Sum of insertion-time combined scores.
double benchmark_objective(const Benchmark& b);

// For each entry s: its combined score against the rest of the
// benchmark, C(s, B \ {s}). Returned in entry order.
std::vector<double> score_leave_one_out(const Benchmark& b,
                                        const SamplePool& store,
                                        const CriterionWeights& w);

// Drops the floor(fraction*|b|) entries with the lowest leave-one-out
// scores, then refills from candidate_pool by the same greedy rule,
// seeded with the survivors, until the original size is restored.
// store must resolve every benchmark entry; candidate_pool must be
// id-disjoint from the benchmark.
Benchmark update_benchmark(const Benchmark& b, const SamplePool& store,
                           const SamplePool& candidate_pool, double fraction,
                           const SelectOptions& opts = {});

}  // namespace msb

#endif  // MSB_SELECTOR_HPP_
