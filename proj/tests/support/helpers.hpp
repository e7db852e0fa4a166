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

#ifndef MSB_TESTS_SUPPORT_HELPERS_HPP_
#define MSB_TESTS_SUPPORT_HELPERS_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "msb/criteria.hpp"
#include "msb/rng.hpp"
#include "msb/selector.hpp"

namespace msb::testing {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s-%d", tag.c_str(), counter_++);
    path_ = std::filesystem::temp_directory_path() / buf;
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

inline std::string padded_id(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "s%05zu", i);
  return buf;
}

// Random scored pool with unit-norm-free embeddings and uniform scores.
inline SamplePool random_pool(std::uint64_t seed, std::size_t n,
                              std::size_t dim, std::size_t n_categories) {
  Rng rng(seed);
  std::vector<ScoredSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ScoredSample s;
    s.id = padded_id(i);
    s.category = rng.next_below(n_categories);
    std::vector<float> v(dim);
    for (auto& x : v) x = static_cast<float>(rng.next_gaussian());
    s.embedding = Embedding(std::move(v));
    s.p_h = rng.next_double();
    s.c_sep = separability(s.p_h);
    s.c_harm = rng.next_double();
    samples.push_back(std::move(s));
  }
  return SamplePool(std::move(samples));
}

// Independent greedy reference: no caching, no unit-vector trick; every
// criterion is recomputed from scratch each step through the public
// criteria functions. Returns ids in insertion order.
inline std::vector<std::string> reference_greedy(const SamplePool& pool,
                                                 const CriterionWeights& w,
                                                 std::size_t n_max,
                                                 std::size_t n_categories,
                                                 std::vector<double>* combined
                                                 = nullptr) {
  const auto& samples = pool.samples();
  std::vector<bool> taken(samples.size(), false);
  std::vector<std::size_t> counts(n_categories, 0);
  std::vector<Embedding> selected;
  std::vector<std::string> order;
  const std::size_t target = std::min(n_max, samples.size());

  while (order.size() < target) {
    std::vector<double> score(samples.size(), 0.0);
    double best_score = -1e300;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (taken[i]) continue;
      const double dh = entropy_gain(samples[i].category, counts, n_categories);
      const double nn = nn_cosine_distance(samples[i].embedding, selected);
      score[i] = combined_score(w, samples[i].c_sep, samples[i].c_harm,
                                diversity(dh, nn));
      best_score = std::max(best_score, score[i]);
    }
    // Declared tie rule: smallest id among candidates within the window.
    std::size_t best = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (taken[i] || score[i] < best_score - kTieEpsilon) continue;
      if (best == samples.size() || samples[i].id < samples[best].id) best = i;
    }
    taken[best] = true;
    counts[samples[best].category] += 1;
    selected.push_back(samples[best].embedding);
    order.push_back(samples[best].id);
    if (combined != nullptr) combined->push_back(score[best]);
  }
  return order;
}

}  // namespace msb::testing

#endif  // MSB_TESTS_SUPPORT_HELPERS_HPP_
