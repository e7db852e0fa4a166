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

#include "msb/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msb {

double separability(double p_h) {
  if (std::isnan(p_h)) throw DataError("p_h is NaN");
  if (p_h < 0.0 || p_h > 1.0) throw DomainError("p_h outside [0,1]");
  if (p_h == 0.0 || p_h == 1.0) return 0.0;
  return -p_h * std::log2(p_h) - (1.0 - p_h) * std::log2(1.0 - p_h);
}

double p_h_from_flags(const std::vector<bool>& flags) {
  if (flags.empty()) throw DomainError("p_h from empty flag list");
  std::size_t harmful = 0;
  for (bool f : flags) harmful += f ? 1 : 0;
  return static_cast<double>(harmful) / static_cast<double>(flags.size());
}

double harmfulness(const JudgmentMatrix& m) {
  if (m.n_judges() == 0 || m.n_models() == 0)
    throw DomainError("harmfulness of empty judgment matrix");
  m.validate();
  double sum = 0.0;
  for (const auto& row : m.probs)
    for (double p : row) sum += p;
  return sum / static_cast<double>(m.n_judges() * m.n_models());
}

double category_entropy(const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

double entropy_gain(std::size_t candidate_category,
                    const std::vector<std::size_t>& counts, std::size_t K) {
  if (K < 2) throw ConfigError("entropy_gain requires K >= 2");
  if (counts.size() != K)
    throw DomainError("category count vector length != K");
  if (candidate_category >= K)
    throw DomainError("candidate category index out of range");
  const double before = category_entropy(counts);
  std::vector<std::size_t> after(counts);
  after[candidate_category] += 1;
  return (category_entropy(after) - before) / std::log(static_cast<double>(K));
}

double nn_cosine_distance(const Embedding& e,
                          const std::vector<Embedding>& selected) {
  if (selected.empty()) return kEmptySelectionDistance;
  double best = std::numeric_limits<double>::infinity();
  for (const Embedding& d : selected)
    best = std::min(best, 1.0 - e.cosine_similarity(d));
  return best;
}

double diversity(double delta_h, double nn_dist) {
  if (!std::isfinite(delta_h) || !std::isfinite(nn_dist))
    throw DataError("non-finite diversity input");
  return (delta_h + nn_dist) / 2.0;
}

double combined_score(const CriterionWeights& w, double c_sep, double c_harm,
                      double c_div) {
  if (!std::isfinite(c_sep) || !std::isfinite(c_harm) ||
      !std::isfinite(c_div))
    throw DataError("non-finite criterion input");
  return w.alpha * c_sep + w.beta * c_harm + w.gamma * c_div;
}

}  // namespace msb
