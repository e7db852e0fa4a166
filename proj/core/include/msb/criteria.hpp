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

#ifndef MSB_CRITERIA_HPP_
#define MSB_CRITERIA_HPP_

#include <cstddef>
#include <vector>

#include "msb/types.hpp"

namespace msb {

// Closed-form criterion math. All functions are pure; same inputs give
// bit-identical outputs.

// Binary entropy of p_h in base 2, so the maximum (at p_h = 0.5) is
// exactly 1. Convention 0*log 0 = 0. Throws DomainError for p_h outside
// [0, 1].
double separability(double p_h);

// Fraction of true flags: the proportion of models whose response was
// judged harmful. Throws DomainError on an empty list.
double p_h_from_flags(const std::vector<bool>& flags);

// Mean of all judge-model probabilities p_{i,j}. Throws DomainError on an
// empty matrix, DataError on NaN entries.
double harmfulness(const JudgmentMatrix& m);

// Shannon entropy (nats) of the category proportions; zero counts are
// skipped, an all-zero vector gives 0. Throws DomainError on negative
// counts.
double category_entropy(const std::vector<std::size_t>& counts);

// Normalized entropy change from adding one sample of
// `candidate_category`: (H(counts+1) - H(counts)) / ln(K). May be
// negative. Throws ConfigError when K < 2, DomainError on a bad index.
double entropy_gain(std::size_t candidate_category,
                    const std::vector<std::size_t>& counts, std::size_t K);

// Distance to the nearest already-selected embedding,
// min over d of (1 - cos(e, d)). Empty selection returns
// kEmptySelectionDistance.
inline constexpr double kEmptySelectionDistance = 1.0;
double nn_cosine_distance(const Embedding& e,
                          const std::vector<Embedding>& selected);

// C_div = (delta_h + nn_dist) / 2.
double diversity(double delta_h, double nn_dist);

// C = alpha*c_sep + beta*c_harm + gamma*c_div.
double combined_score(const CriterionWeights& w, double c_sep, double c_harm,
                      double c_div);

}  // namespace msb

#endif  // MSB_CRITERIA_HPP_
