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

#include "msb/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "msb/util.hpp"

namespace msb {
namespace {

using nlohmann::json;

double unit_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot;
}

// Double-precision unit vector; float rounding here would leak into the
// greedy trace.
std::vector<double> unit_of(const Embedding& e) {
  std::vector<double> out(e.dim());
  const double norm = e.norm();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<double>(e.vector()[i]) / norm;
  return out;
}

void validate_scored(const ScoredSample& s, std::size_t n_categories,
                     std::size_t expect_dim) {
  if (!std::isfinite(s.p_h) || s.p_h < 0.0 || s.p_h > 1.0 ||
      !std::isfinite(s.c_sep) || !std::isfinite(s.c_harm))
    throw DataError("missing or invalid scores on sample " + s.id);
  if (s.category >= n_categories)
    throw DataError("category index out of range on sample " + s.id);
  if (s.embedding.dim() != expect_dim)
    throw DataError("embedding dimension mismatch on sample " + s.id);
}

// Greedy loop shared by select and update_benchmark. seed_entries (already
// renumbered 1..m, resolvable in seed_store) form the initial selection.
Benchmark run_greedy(const SamplePool& pool, const CriterionWeights& w,
                     std::size_t target, std::size_t n_categories,
                     const std::vector<BenchmarkEntry>& seed_entries,
                     const SamplePool& seed_store,
                     const SelectOptions& opts) {
  w.validate();
  if (n_categories < 2) throw ConfigError("taxonomy needs K >= 2");

  const auto& samples = pool.samples();
  const std::size_t n = samples.size();
  const std::size_t dim =
      n > 0 ? samples[0].embedding.dim()
            : seed_store.by_id(seed_entries.front().sample_id).embedding.dim();
  for (const auto& s : samples) validate_scored(s, n_categories, dim);

  // Unit-normalize once; every later distance is a plain dot product.
  std::vector<std::vector<double>> unit(n);
  std::vector<double> static_score(n);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i] = unit_of(samples[i].embedding);
    static_score[i] = w.alpha * samples[i].c_sep + w.beta * samples[i].c_harm;
  }

  SelectionState st;
  st.category_counts.assign(n_categories, 0);
  // Min distance over actual members; +inf until one exists. The
  // empty-set convention is applied at scoring time, never cached, as
  // real distances can exceed it when cosines go negative.
  st.cached_nn_dist.assign(n, std::numeric_limits<double>::infinity());
  st.remaining.assign(n, 1);

  Benchmark out;
  out.weights = w;
  out.n_max = target;
  out.n_categories = n_categories;
  out.pool_digest = opts.pool_digest;
  out.engine_version = opts.engine_version;
  out.seed = opts.seed;
  out.parent_manifest_hash = opts.parent_manifest_hash;

  for (const auto& e : seed_entries) {
    const ScoredSample& s = seed_store.by_id(e.sample_id);
    validate_scored(s, n_categories, dim);
    st.selected_ids.push_back(s.id);
    st.category_counts[s.category] += 1;
    st.selected_embeddings.push_back(s.embedding);
    out.entries.push_back(e);
  }
  if (!seed_entries.empty()) {
    std::vector<std::vector<double>> seed_unit;
    for (const auto& sel : st.selected_embeddings)
      seed_unit.push_back(unit_of(sel));
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& sel : seed_unit)
        best = std::min(best, 1.0 - unit_dot(unit[i], sel));
      st.cached_nn_dist[i] = best;
    }
  }
  st.step = seed_entries.size();

  const double log_k = std::log(static_cast<double>(n_categories));
  std::vector<double> scores(n, std::numeric_limits<double>::quiet_NaN());
  std::size_t n_remaining = n;

  while (st.selected_ids.size() < target && n_remaining > 0) {
    // Delta-entropy depends only on the candidate's category.
    const double h_before = category_entropy(st.category_counts);
    std::vector<double> delta_by_cat(n_categories);
    for (std::size_t c = 0; c < n_categories; ++c) {
      auto plus = st.category_counts;
      plus[c] += 1;
      delta_by_cat[c] = (category_entropy(plus) - h_before) / log_k;
    }

    const bool none_selected = st.selected_ids.empty();
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!st.remaining[i]) continue;
      const double nn =
          none_selected ? kEmptySelectionDistance : st.cached_nn_dist[i];
      const double c_div = (delta_by_cat[samples[i].category] + nn) / 2.0;
      scores[i] = static_score[i] + w.gamma * c_div;
      best_score = std::max(best_score, scores[i]);
    }

    // Ties within kTieEpsilon go to the smallest sample id.
    std::size_t chosen = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!st.remaining[i] || scores[i] < best_score - kTieEpsilon) continue;
      if (chosen == n || samples[i].id < samples[chosen].id) chosen = i;
    }

    std::vector<double> scores_before;
    std::vector<char> remaining_before;
    if (opts.observer) {
      scores_before = scores;
      remaining_before = st.remaining;
    }

    const ScoredSample& s = samples[chosen];
    st.step += 1;
    st.remaining[chosen] = 0;
    n_remaining -= 1;
    st.selected_ids.push_back(s.id);
    st.category_counts[s.category] += 1;
    st.selected_embeddings.push_back(s.embedding);

    BenchmarkEntry entry;
    entry.sample_id = s.id;
    entry.insertion_step = out.entries.size() + 1;
    entry.scores.p_h = s.p_h;
    entry.scores.c_sep = s.c_sep;
    entry.scores.c_harm = s.c_harm;
    entry.scores.c_div =
        (delta_by_cat[s.category] +
         (none_selected ? kEmptySelectionDistance : st.cached_nn_dist[chosen])) /
        2.0;
    entry.scores.combined = scores[chosen];
    out.entries.push_back(entry);

    // Incremental cache maintenance: only the new member can lower a
    // candidate's nearest-neighbor distance.
    for (std::size_t i = 0; i < n; ++i) {
      if (!st.remaining[i]) continue;
      const double d = 1.0 - unit_dot(unit[i], unit[chosen]);
      if (d < st.cached_nn_dist[i]) st.cached_nn_dist[i] = d;
    }

    if (opts.observer) {
      SelectionStep view;
      view.step = st.step;
      view.chosen_index = chosen;
      view.scores_before = &scores_before;
      view.remaining_before = &remaining_before;
      view.state_after = &st;
      opts.observer(view);
    }
  }

  finalize_manifest_hash(out);
  return out;
}

}  // namespace

SamplePool::SamplePool(std::vector<ScoredSample> samples)
    : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    auto [it, inserted] = index_.emplace(samples_[i].id, i);
    if (!inserted) throw DataError("duplicate sample id: " + samples_[i].id);
  }
}

bool SamplePool::contains(const std::string& id) const {
  return index_.count(id) > 0;
}

const ScoredSample& SamplePool::by_id(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DataError("unresolvable sample id: " + id);
  return samples_[it->second];
}

std::string manifest_bytes(const Benchmark& b) {
  std::ostringstream out;
  json header;
  header["record"] = "header";
  header["weights"] = {{"alpha", b.weights.alpha},
                       {"beta", b.weights.beta},
                       {"gamma", b.weights.gamma}};
  header["n_max"] = b.n_max;
  header["n_categories"] = b.n_categories;
  header["pool_digest"] = b.pool_digest;
  header["engine_version"] = b.engine_version;
  header["seed"] = b.seed;
  header["parent_manifest_hash"] = b.parent_manifest_hash;
  out << header.dump() << "\n";
  for (const auto& e : b.entries) {
    json rec;
    rec["record"] = "entry";
    rec["sample_id"] = e.sample_id;
    rec["insertion_step"] = e.insertion_step;
    rec["p_h"] = e.scores.p_h;
    rec["c_sep"] = e.scores.c_sep;
    rec["c_harm"] = e.scores.c_harm;
    rec["c_div"] = e.scores.c_div;
    rec["combined"] = e.scores.combined;
    out << rec.dump() << "\n";
  }
  return out.str();
}

void finalize_manifest_hash(Benchmark& b) {
  b.manifest_hash = sha256_hex(manifest_bytes(b));
}

void write_manifest(const Benchmark& b, const std::string& path) {
  write_file(path, manifest_bytes(b));
}

Benchmark read_manifest(const std::string& path) {
  std::istringstream in(read_file(path));
  Benchmark b;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    const std::string kind = rec.at("record");
    if (kind == "header") {
      if (have_header) throw DataError("duplicate manifest header: " + path);
      have_header = true;
      b.weights.alpha = rec.at("weights").at("alpha");
      b.weights.beta = rec.at("weights").at("beta");
      b.weights.gamma = rec.at("weights").at("gamma");
      b.n_max = rec.at("n_max");
      b.n_categories = rec.at("n_categories");
      b.pool_digest = rec.at("pool_digest");
      b.engine_version = rec.at("engine_version");
      b.seed = rec.at("seed");
      b.parent_manifest_hash = rec.at("parent_manifest_hash");
    } else if (kind == "entry") {
      BenchmarkEntry e;
      e.sample_id = rec.at("sample_id");
      e.insertion_step = rec.at("insertion_step");
      e.scores.p_h = rec.at("p_h");
      e.scores.c_sep = rec.at("c_sep");
      e.scores.c_harm = rec.at("c_harm");
      e.scores.c_div = rec.at("c_div");
      e.scores.combined = rec.at("combined");
      b.entries.push_back(e);
    } else {
      throw DataError("unknown manifest record kind: " + kind);
    }
  }
  if (!have_header) throw DataError("manifest missing header: " + path);
  finalize_manifest_hash(b);
  return b;
}

Benchmark select(const SamplePool& pool, const CriterionWeights& w,
                 std::size_t n_max, std::size_t n_categories,
                 const SelectOptions& opts) {
  if (pool.size() == 0) throw DomainError("select over an empty pool");
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  const std::size_t target = std::min(n_max, pool.size());
  Benchmark b = run_greedy(pool, w, target, n_categories, {}, SamplePool{},
                           opts);
  b.n_max = n_max;
  finalize_manifest_hash(b);
  return b;
}

double benchmark_objective(const Benchmark& b) {
  double sum = 0.0;
  for (const auto& e : b.entries) sum += e.scores.combined;
  return sum;
}

std::vector<double> score_leave_one_out(const Benchmark& b,
                                        const SamplePool& store,
                                        const CriterionWeights& w) {
  w.validate();
  const std::size_t n = b.entries.size();
  std::vector<const ScoredSample*> members(n);
  std::vector<std::size_t> counts(b.n_categories, 0);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = &store.by_id(b.entries[i].sample_id);
    counts[members[i]->category] += 1;
  }
  const double log_k = std::log(static_cast<double>(b.n_categories));
  const double h_full = category_entropy(counts);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto minus = counts;
    minus[members[i]->category] -= 1;
    const double delta_h = (h_full - category_entropy(minus)) / log_k;
    double nn = n > 1 ? std::numeric_limits<double>::infinity()
                      : kEmptySelectionDistance;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      nn = std::min(nn, 1.0 - members[i]->embedding.cosine_similarity(
                             members[j]->embedding));
    }
    const double c_div = diversity(delta_h, nn);
    out[i] = combined_score(w, members[i]->c_sep, members[i]->c_harm, c_div);
  }
  return out;
}

Benchmark update_benchmark(const Benchmark& b, const SamplePool& store,
                           const SamplePool& candidate_pool, double fraction,
                           const SelectOptions& opts) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw DomainError("update fraction must be in (0, 1]");
  for (const auto& e : b.entries)
    if (candidate_pool.contains(e.sample_id))
      throw DataError("candidate pool overlaps benchmark at id " +
                      e.sample_id);

  const std::size_t n = b.entries.size();
  const std::size_t remove_count =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  if (candidate_pool.size() < remove_count)
    throw CapacityError("candidate pool smaller than removal count (" +
                        std::to_string(candidate_pool.size()) + " < " +
                        std::to_string(remove_count) + ")");

  const std::vector<double> loo = score_leave_one_out(b, store, b.weights);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    if (loo[a] != loo[c]) return loo[a] < loo[c];
    return b.entries[a].sample_id < b.entries[c].sample_id;
  });
  std::vector<char> removed(n, 0);
  for (std::size_t i = 0; i < remove_count; ++i) removed[order[i]] = 1;

  // Survivors keep their original scores but are renumbered contiguously.
  std::vector<BenchmarkEntry> survivors;
  for (std::size_t i = 0; i < n; ++i) {
    if (removed[i]) continue;
    BenchmarkEntry e = b.entries[i];
    e.insertion_step = survivors.size() + 1;
    survivors.push_back(e);
  }

  SelectOptions chained = opts;
  chained.parent_manifest_hash = b.manifest_hash;
  if (chained.pool_digest.empty()) chained.pool_digest = b.pool_digest;
  if (chained.engine_version.empty()) chained.engine_version = b.engine_version;

  Benchmark out = run_greedy(candidate_pool, b.weights, n, b.n_categories,
                             survivors, store, chained);
  out.n_max = b.n_max;
  finalize_manifest_hash(out);
  return out;
}

}  // namespace msb
