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

#include <cstdio>

#include <benchmark/benchmark.h>

#include "msb/criteria.hpp"
#include "msb/rng.hpp"
#include "msb/selector.hpp"

namespace {

msb::SamplePool random_pool(std::uint64_t seed, std::size_t n,
                            std::size_t dim, std::size_t n_categories) {
  msb::Rng rng(seed);
  std::vector<msb::ScoredSample> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "s%07zu", i);
    samples[i].id = id;
    samples[i].category = rng.next_below(n_categories);
    std::vector<float> v(dim);
    for (auto& x : v) x = static_cast<float>(rng.next_gaussian());
    samples[i].embedding = msb::Embedding(std::move(v));
    samples[i].p_h = rng.next_double();
    samples[i].c_sep = msb::separability(samples[i].p_h);
    samples[i].c_harm = rng.next_double();
  }
  return msb::SamplePool(std::move(samples));
}

void BM_Select(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t n_max = static_cast<std::size_t>(state.range(1));
  const msb::SamplePool pool = random_pool(7, n, 512, 6);
  const msb::CriterionWeights w{0.5, 0.3, 0.2};
  for (auto _ : state) {
    msb::Benchmark b = msb::select(pool, w, n_max, 6);
    benchmark::DoNotOptimize(b.manifest_hash);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n_max));
}
BENCHMARK(BM_Select)
    ->Args({1000, 100})
    ->Args({10000, 400})
    ->Args({100000, 4000})
    ->Unit(benchmark::kMillisecond);

void BM_LeaveOneOut(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const msb::SamplePool pool = random_pool(11, n, 512, 6);
  const msb::CriterionWeights w{0.5, 0.3, 0.2};
  const msb::Benchmark b = msb::select(pool, w, n, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(msb::score_leave_one_out(b, pool, w));
}
BENCHMARK(BM_LeaveOneOut)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
