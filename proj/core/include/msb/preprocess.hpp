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

#ifndef MSB_PREPROCESS_HPP_
#define MSB_PREPROCESS_HPP_

#include <map>
#include <string>
#include <vector>

#include "msb/gateway.hpp"
#include "msb/pool_io.hpp"

namespace msb {

struct FilterResult {
  Pool pool;
  std::vector<Rejection> rejections;
};

// Retains samples with question length >= min_chars (counted in Unicode
// code points). The default drops prompts of 24 characters or fewer.
FilterResult filter_prompt_length(const Pool& pool, std::size_t min_chars = 25);

// Retains samples whose image decodes with width >= min_width and
// height >= min_height (inclusive). Unreadable images are rejected with a
// decode_error reason, never a crash.
FilterResult filter_image_resolution(const Pool& pool, std::size_t min_width,
                                     std::size_t min_height);

struct DedupResult {
  Pool pool;
  std::vector<Rejection> rejections;
  // dropped id -> retained representative id
  std::map<std::string, std::string> clusters;
};

// Greedy first-wins scan in pool order: a sample is dropped when its
// cosine similarity to any previously retained sample is >= threshold.
// Requires embeddings on every sample.
DedupResult deduplicate(const Pool& pool, double sim_threshold = 0.95);

// Retains samples whose best similarity to a harm-concept prompt beats
// their best similarity to a neutral-concept prompt by at least margin.
// Works on image-only embeddings fetched through the gateway.
FilterResult coarse_harm_filter(const Pool& pool, ModelGateway& gateway,
                                const EndpointConfig& embedder,
                                const std::vector<std::string>& harm_prompts,
                                const std::vector<std::string>& neutral_prompts,
                                double margin);

enum class VerificationStatus {
  kVerified,       // embedding top-1 and LVLM agree
  kOverridden,     // LVLM disagreed and won
  kEmbeddingOnly,  // LVLM refused or was unparseable
  kUncategorized,  // every client failed; sample goes to quarantine
};
std::string to_string(VerificationStatus s);

struct Taxonomy {
  std::vector<std::string> categories;
  // category -> one-line description used for embedding match
  std::map<std::string, std::string> descriptions;
  // category -> subcategory labels
  std::map<std::string, std::vector<std::string>> subcategories;

  void validate() const;  // throws ConfigError
};

Taxonomy default_taxonomy();

struct Categorization {
  std::string category;
  std::string subcategory;
  double confidence = 0.0;  // embedding similarity of the winning category
  VerificationStatus status = VerificationStatus::kUncategorized;
};

// Two-stage categorization: embedding similarity ranks categories, then
// the LVLM confirms the top-1. On disagreement the LVLM's choice wins.
Categorization categorize(const Sample& sample, ModelGateway& gateway,
                          const EndpointConfig& embedder,
                          const EndpointConfig& lvlm, const Taxonomy& taxonomy);

struct PreprocessOptions {
  std::size_t min_chars = 25;
  std::size_t min_width = 224;
  std::size_t min_height = 224;
  double dedup_threshold = 0.95;
  double harm_margin = 0.0;
  bool run_harm_filter = false;       // needs embedder + concept prompts
  bool run_resolution_filter = true;  // needs resolvable image files
  bool run_categorize = false;        // needs embedder + LVLM
  std::vector<std::string> harm_prompts;
  std::vector<std::string> neutral_prompts;
};

struct PreprocessResult {
  Pool pool;
  Pool quarantine;  // samples no client could categorize
  std::vector<Rejection> rejections;
};

// Fixed stage order: harm filter -> length -> resolution -> dedup ->
// categorize. The order is recorded in the output pool's provenance.
PreprocessResult preprocess_pipeline(const Pool& pool,
                                     const PreprocessOptions& opts,
                                     ModelGateway* gateway,
                                     const EndpointConfig* embedder,
                                     const EndpointConfig* lvlm,
                                     const Taxonomy& taxonomy);

}  // namespace msb

#endif  // MSB_PREPROCESS_HPP_
