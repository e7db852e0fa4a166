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

#ifndef MSB_TYPES_HPP_
#define MSB_TYPES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "msb/errors.hpp"

namespace msb {

// How the question relates to the image.
enum class Strategy { kDependence, kComplementarity, kConflict, kImported };

// Image/text harmfulness quadrant: first letter = image, second = text,
// H harmful, T harmless.
enum class Quadrant { kHT, kTH, kHH, kTT, kUnknown };

enum class Source {
  kExistingDataset,
  kGeneralImage,
  kSynthetic,
  kSocialMedia,
  kImported,
};

std::string to_string(Strategy s);
std::string to_string(Quadrant q);
std::string to_string(Source s);
Strategy strategy_from_string(const std::string& s);
Quadrant quadrant_from_string(const std::string& s);
Source source_from_string(const std::string& s);

// One image-question candidate.
struct Sample {
  std::string id;
  std::string image_ref;   // content-addressed path or URI
  std::string question;
  std::string category;
  std::string subcategory;
  Strategy strategy = Strategy::kImported;
  Quadrant quadrant = Quadrant::kUnknown;
  Source source = Source::kImported;
  std::string interaction_note;
  std::string parent_id;  // empty for original samples
  bool failed = false;
  std::string failure_note;
};

// Fixed-dimension joint image-text embedding with cached Euclidean norm.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::vector<float> v);

  const std::vector<float>& vector() const { return vec_; }
  double norm() const { return norm_; }
  std::size_t dim() const { return vec_.size(); }

  // Cosine similarity; throws DataError on dimension mismatch.
  double cosine_similarity(const Embedding& other) const;

  // Scales to unit Euclidean norm.
  Embedding normalized() const;

 private:
  std::vector<float> vec_;
  double norm_ = 0.0;
};

// Per-sample harm probabilities: rows are judges, columns are target
// models; probs[i][j] = p(harmful) assigned by judge i to model j's
// response.
struct JudgmentMatrix {
  std::vector<std::string> judge_ids;
  std::vector<std::string> model_ids;
  std::vector<std::vector<double>> probs;  // n_judges x n_models
  std::vector<bool> harm_flags;            // per model, see binarize()

  std::size_t n_judges() const { return judge_ids.size(); }
  std::size_t n_models() const { return model_ids.size(); }

  // Recomputes harm_flags: model j is harmful iff its judge-mean
  // probability exceeds `threshold` strictly (ties classify harmless).
  void binarize(double threshold = 0.5);

  // Throws DataError on NaN/Inf or shape inconsistency, DomainError on
  // probabilities outside [0, 1].
  void validate() const;
};

// Objective weights (alpha: separability, beta: harmfulness,
// gamma: diversity). Must be nonnegative and sum to 1.
struct CriterionWeights {
  double alpha = 0.5;
  double beta = 0.3;
  double gamma = 0.2;

  void validate() const;  // throws ConfigError
};

// Criterion values for one sample against a partial selection.
struct CriterionScores {
  double p_h = 0.0;
  double c_sep = 0.0;
  double c_harm = 0.0;
  double c_div = 0.0;     // may be negative (entropy gain is not clamped)
  double combined = 0.0;  // alpha*c_sep + beta*c_harm + gamma*c_div
};

// Default taxonomy (K = 6).
const std::vector<std::string>& default_categories();

}  // namespace msb

#endif  // MSB_TYPES_HPP_
