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

#include <benchmark/benchmark.h>

#include "msb/criteria.hpp"
#include "msb/rng.hpp"

namespace {

void BM_Separability(benchmark::State& state) {
  msb::Rng rng(1);
  const double p = rng.next_double();
  for (auto _ : state) benchmark::DoNotOptimize(msb::separability(p));
}
BENCHMARK(BM_Separability);

void BM_EntropyGain(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  msb::Rng rng(2);
  std::vector<std::size_t> counts(k);
  for (auto& c : counts) c = rng.next_below(100);
  for (auto _ : state)
    benchmark::DoNotOptimize(msb::entropy_gain(k / 2, counts, k));
}
BENCHMARK(BM_EntropyGain)->Arg(6)->Arg(64);

void BM_NnCosineDistance(benchmark::State& state) {
  const std::size_t n_selected = static_cast<std::size_t>(state.range(0));
  msb::Rng rng(3);
  auto vec = [&rng]() {
    std::vector<float> v(512);
    for (auto& x : v) x = static_cast<float>(rng.next_gaussian());
    return msb::Embedding(std::move(v));
  };
  const msb::Embedding probe = vec();
  std::vector<msb::Embedding> selected;
  for (std::size_t i = 0; i < n_selected; ++i) selected.push_back(vec());
  for (auto _ : state)
    benchmark::DoNotOptimize(msb::nn_cosine_distance(probe, selected));
}
BENCHMARK(BM_NnCosineDistance)->Arg(16)->Arg(256)->Arg(4096);

}  // namespace
