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

#include <algorithm>
#include <cmath>
#include <set>

#include <doctest.h>

#include "msb/selector.hpp"
#include "support/helpers.hpp"

using namespace msb;
using msb::testing::random_pool;
using msb::testing::reference_greedy;
using msb::testing::TempDir;

TEST_CASE("select with gamma=0 equals sorting by the static score") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SamplePool pool = random_pool(seed, 200, 8, 6);
    const CriterionWeights w{0.6, 0.4, 0.0};
    Benchmark b = select(pool, w, 20, 6);

    std::vector<std::string> expected;
    for (const auto& s : pool.samples()) expected.push_back(s.id);
    std::sort(expected.begin(), expected.end(),
              [&](const std::string& a, const std::string& c) {
                const auto& sa = pool.by_id(a);
                const auto& sc = pool.by_id(c);
                const double va = w.alpha * sa.c_sep + w.beta * sa.c_harm;
                const double vc = w.alpha * sc.c_sep + w.beta * sc.c_harm;
                if (va != vc) return va > vc;
                return a < c;
              });
    expected.resize(20);
    std::set<std::string> want(expected.begin(), expected.end());
    std::set<std::string> got;
    for (const auto& e : b.entries) got.insert(e.sample_id);
    CHECK(got == want);
  }
}

TEST_CASE("select trace matches the from-scratch reference") {
  Rng seeds(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + seeds.next_below(9);   // <= 12
    const std::size_t n_max = 1 + seeds.next_below(5);
    SamplePool pool = random_pool(seeds.next_u64(), n, 6, 4);
    const CriterionWeights w{0.4, 0.3, 0.3};

    std::vector<double> ref_scores;
    const auto ref = reference_greedy(pool, w, n_max, 4, &ref_scores);
    Benchmark b = select(pool, w, n_max, 4);

    REQUIRE(b.entries.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(b.entries[i].sample_id == ref[i]);
      CHECK(b.entries[i].scores.combined ==
            doctest::Approx(ref_scores[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("per-step argmax and cache consistency audited via observer") {
  SamplePool pool = random_pool(321, 300, 16, 6);
  const CriterionWeights w{0.5, 0.3, 0.2};
  Rng audit_rng(17);

  SelectOptions opts;
  opts.observer = [&](const SelectionStep& step) {
    const auto& scores = *step.scores_before;
    const auto& remaining = *step.remaining_before;
    const double chosen = scores[step.chosen_index];
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (!remaining[i]) continue;
      CHECK(chosen >= scores[i] - 1e-12);
    }
    // Cached nearest-neighbor distances vs recomputation for a few
    // random remaining candidates.
    const auto& st = *step.state_after;
    for (int k = 0; k < 10; ++k) {
      const std::size_t i = audit_rng.next_below(scores.size());
      if (!st.remaining[i]) continue;
      const double fresh = nn_cosine_distance(
          pool.samples()[i].embedding, st.selected_embeddings);
      CHECK(std::abs(st.cached_nn_dist[i] - fresh) < 1e-9);
    }
  };
  Benchmark b = select(pool, w, 60, 6, opts);
  CHECK(b.entries.size() == 60);
}

TEST_CASE("benchmark entry invariants") {
  SamplePool pool = random_pool(5, 50, 8, 6);
  Benchmark b = select(pool, {0.5, 0.3, 0.2}, 30, 6);
  CHECK(b.entries.size() == 30);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < b.entries.size(); ++i) {
    CHECK(b.entries[i].insertion_step == i + 1);
    ids.insert(b.entries[i].sample_id);
  }
  CHECK(ids.size() == b.entries.size());

  // n_max larger than the pool saturates at the pool size.
  Benchmark all = select(pool, {0.5, 0.3, 0.2}, 500, 6);
  CHECK(all.entries.size() == 50);
}

TEST_CASE("select input validation") {
  CHECK_THROWS_AS(select(SamplePool{}, {0.5, 0.3, 0.2}, 10, 6), DomainError);

  SamplePool pool = random_pool(6, 10, 8, 6);
  CHECK_THROWS_AS(select(pool, {0.5, 0.5, 0.5}, 5, 6), ConfigError);

  auto samples = pool.samples();
  samples[3].p_h = std::nan("");
  SamplePool bad(samples);
  try {
    select(bad, {0.5, 0.3, 0.2}, 5, 6);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(samples[3].id) != std::string::npos);
  }

  auto dup = pool.samples();
  dup.push_back(dup.front());
  CHECK_THROWS_AS(SamplePool{dup}, DataError);
}

TEST_CASE("manifest round trip and deterministic hash") {
  SamplePool pool = random_pool(7, 80, 8, 6);
  SelectOptions opts;
  opts.pool_digest = "digest-under-test";
  opts.seed = 42;
  Benchmark a = select(pool, {0.5, 0.3, 0.2}, 25, 6, opts);
  Benchmark b = select(pool, {0.5, 0.3, 0.2}, 25, 6, opts);
  CHECK(a.manifest_hash == b.manifest_hash);
  CHECK(!a.manifest_hash.empty());

  TempDir dir("msb-manifest");
  write_manifest(a, dir.file("benchmark.jsonl"));
  Benchmark back = read_manifest(dir.file("benchmark.jsonl"));
  CHECK(back.manifest_hash == a.manifest_hash);
  CHECK(back.entries.size() == a.entries.size());
  CHECK(back.pool_digest == "digest-under-test");
  CHECK(back.seed == 42);
  CHECK(back.weights.beta == a.weights.beta);
}

TEST_CASE("benchmark objective") {
  Benchmark empty;
  CHECK(benchmark_objective(empty) == 0.0);
  Benchmark two;
  two.entries.resize(2);
  two.entries[0].scores.combined = 0.73;
  two.entries[1].scores.combined = 0.61;
  CHECK(benchmark_objective(two) == doctest::Approx(1.34));
}

TEST_CASE("leave-one-out scoring") {
  const CriterionWeights w{0.5, 0.3, 0.2};

  SUBCASE("single entry uses the empty-selection conventions") {
    SamplePool pool = random_pool(8, 5, 4, 6);
    Benchmark b = select(pool, w, 1, 6);
    const auto loo = score_leave_one_out(b, pool, w);
    REQUIRE(loo.size() == 1);
    const auto& s = pool.by_id(b.entries[0].sample_id);
    const double expected =
        combined_score(w, s.c_sep, s.c_harm, diversity(0.0, 1.0));
    CHECK(loo[0] == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("duplicate embeddings get zero nn distance against each other") {
    std::vector<ScoredSample> samples(2);
    samples[0].id = "a";
    samples[1].id = "b";
    for (auto& s : samples) {
      s.embedding = Embedding(std::vector<float>{1.0f, 2.0f});
      s.p_h = 0.5;
      s.c_sep = 1.0;
      s.c_harm = 0.5;
    }
    samples[1].category = 1;
    SamplePool pool{samples};
    Benchmark b = select(pool, w, 2, 6);
    const auto loo = score_leave_one_out(b, pool, w);
    // nn distance 0 for both; only the entropy term differs.
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& s = pool.by_id(b.entries[i].sample_id);
      const double dh =
          (category_entropy({1, 1, 0, 0, 0, 0}) - 0.0) / std::log(6.0);
      const double expected =
          combined_score(w, s.c_sep, s.c_harm, diversity(dh, 0.0));
      CHECK(loo[i] == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  SUBCASE("matches independent recomputation on a 5-sample benchmark") {
    SamplePool pool = random_pool(9, 12, 6, 4);
    Benchmark b = select(pool, w, 5, 4);
    const auto loo = score_leave_one_out(b, pool, w);
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
      const auto& si = pool.by_id(b.entries[i].sample_id);
      std::vector<std::size_t> full(4, 0);
      std::vector<Embedding> others;
      for (const auto& e : b.entries)
        full[pool.by_id(e.sample_id).category] += 1;
      auto minus = full;
      minus[si.category] -= 1;
      for (std::size_t j = 0; j < b.entries.size(); ++j)
        if (j != i) others.push_back(pool.by_id(b.entries[j].sample_id).embedding);
      const double dh =
          (category_entropy(full) - category_entropy(minus)) / std::log(4.0);
      const double nn = nn_cosine_distance(si.embedding, others);
      const double expected =
          combined_score(w, si.c_sep, si.c_harm, diversity(dh, nn));
      CHECK(loo[i] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

namespace {

// Benchmark over weak samples plus a candidate pool that strictly
// dominates them in both static criteria.
struct DominancePools {
  SamplePool store;
  SamplePool candidates;
};

DominancePools dominance_fixture(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<ScoredSample> weak, strong;
  for (std::size_t i = 0; i < n; ++i) {
    ScoredSample s;
    s.id = "weak-" + msb::testing::padded_id(i);
    s.category = rng.next_below(6);
    std::vector<float> v(8);
    for (auto& x : v) x = static_cast<float>(rng.next_gaussian());
    s.embedding = Embedding(v);
    s.p_h = 0.05;
    s.c_sep = separability(s.p_h);        // ~0.29
    s.c_harm = 0.1 + 0.1 * rng.next_double();
    weak.push_back(s);

    ScoredSample d;
    d.id = "cand-" + msb::testing::padded_id(i);
    d.category = rng.next_below(6);
    std::vector<float> u(8);
    for (auto& x : u) x = static_cast<float>(rng.next_gaussian());
    d.embedding = Embedding(u);
    d.p_h = 0.5;
    d.c_sep = 1.0;
    d.c_harm = 0.8 + 0.2 * rng.next_double();
    strong.push_back(d);
  }
  return {SamplePool(weak), SamplePool(strong)};
}

}  // namespace

TEST_CASE("update replaces floor(fraction*n) entries and keeps the size") {
  auto fx = dominance_fixture(31, 10);
  Benchmark b = select(fx.store, {0.5, 0.3, 0.2}, 10, 6);
  Benchmark updated = update_benchmark(b, fx.store, fx.candidates, 0.2);
  CHECK(updated.entries.size() == 10);
  std::size_t replaced = 0;
  for (const auto& e : updated.entries)
    if (e.sample_id.rfind("cand-", 0) == 0) replaced += 1;
  CHECK(replaced == 2);
  CHECK(updated.parent_manifest_hash == b.manifest_hash);
  for (std::size_t i = 0; i < updated.entries.size(); ++i)
    CHECK(updated.entries[i].insertion_step == i + 1);
}

TEST_CASE("update with dominating candidates does not lower the objective") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto fx = dominance_fixture(seed, 12);
    Benchmark b = select(fx.store, {0.5, 0.3, 0.2}, 12, 6);
    Benchmark updated = update_benchmark(b, fx.store, fx.candidates, 0.5);
    CHECK(updated.entries.size() == b.entries.size());

    // Recomputed leave-one-out objective over each final set.
    std::vector<ScoredSample> everything;
    for (const auto& s : fx.store.samples()) everything.push_back(s);
    for (const auto& s : fx.candidates.samples()) everything.push_back(s);
    SamplePool all(everything);
    auto sum = [&](const Benchmark& bench) {
      const auto loo = score_leave_one_out(bench, all, bench.weights);
      double t = 0.0;
      for (double v : loo) t += v;
      return t;
    };
    CHECK(sum(updated) >= sum(b) - 1e-9);
  }
}

TEST_CASE("update full replacement and error paths") {
  auto fx = dominance_fixture(77, 6);
  Benchmark b = select(fx.store, {0.5, 0.3, 0.2}, 6, 6);

  Benchmark swapped = update_benchmark(b, fx.store, fx.candidates, 1.0);
  for (const auto& e : swapped.entries)
    CHECK(e.sample_id.rfind("cand-", 0) == 0);

  CHECK_THROWS_AS(update_benchmark(b, fx.store, fx.candidates, 0.0),
                  DomainError);
  // Candidate pool overlapping the benchmark is rejected.
  CHECK_THROWS_AS(update_benchmark(b, fx.store, fx.store, 0.5), DataError);
  // Candidate pool too small for the removal count.
  auto few = fx.candidates.samples();
  few.resize(1);
  CHECK_THROWS_AS(update_benchmark(b, fx.store, SamplePool(few), 0.5),
                  CapacityError);
}

TEST_CASE("tie-breaking picks the lexicographically smallest id") {
  std::vector<ScoredSample> samples(3);
  const char* ids[] = {"zeta", "alpha", "mid"};
  for (std::size_t i = 0; i < 3; ++i) {
    samples[i].id = ids[i];
    samples[i].category = 0;
    samples[i].embedding = Embedding(std::vector<float>{1.0f, 0.0f});
    samples[i].p_h = 0.5;
    samples[i].c_sep = 1.0;
    samples[i].c_harm = 0.5;
  }
  Benchmark b = select(SamplePool{samples}, {0.5, 0.3, 0.2}, 3, 6);
  CHECK(b.entries[0].sample_id == "alpha");
  CHECK(b.entries[1].sample_id == "mid");
  CHECK(b.entries[2].sample_id == "zeta");
}
