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

#ifndef MSB_SYNTHESIZE_HPP_
#define MSB_SYNTHESIZE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "msb/gateway.hpp"
#include "msb/types.hpp"

namespace msb {

// Prompt templates for one cross-modal generation strategy. Placeholders:
// {description}, {harm}, {examples}, {question}.
struct StrategyTemplate {
  Strategy strategy = Strategy::kDependence;
  std::string describe_prompt;
  std::string harm_explain_prompt;
  std::string question_prompt;
  std::string interaction_prompt;
  // (image description, question) pairs for few-shot slots
  std::vector<std::pair<std::string, std::string>> few_shot_examples;

  void validate() const;  // non-empty prompts, >= 2 examples
};

// Editable defaults; production templates live in a config directory and
// are hot-swappable without rebuild.
StrategyTemplate default_template(Strategy strategy);
StrategyTemplate load_template(const std::string& path);
void save_template(const StrategyTemplate& t, const std::string& path);

// Loads <dir>/dependence.json etc., falling back to defaults for files
// that do not exist.
std::vector<StrategyTemplate> load_template_dir(const std::string& dir);

// Case-insensitive harm-lexicon hit on the text.
bool text_lexicon_hit(const std::string& text,
                      const std::vector<std::string>& harm_lexicon);

// Cross-classification by per-modality harm.
Quadrant quadrant_label(const std::string& question,
                        const std::vector<std::string>& harm_lexicon,
                        bool image_harm_flag);

struct GeneratePairOptions {
  std::vector<std::string> harm_lexicon;
  bool image_harm_flag = true;  // from coarse_harm_filter or fixture
  std::string sample_id;        // assigned by the caller
};

// Four-turn generation pipeline: describe the image, explain its
// harmfulness, write the question few-shot, then delineate the
// image-question interaction. A refusal at any turn marks the sample
// Failed with the turn index. Dependence-strategy questions must pass the
// harm-lexicon gate; violators are marked Failed, never silently kept.
Sample generate_pair(const std::string& image_ref,
                     const StrategyTemplate& tmpl, ModelGateway& gateway,
                     const EndpointConfig& generator,
                     const GeneratePairOptions& opts);

enum class TextTechnique {
  kRolePlay,
  kContextual,
  kSynonym,
  kParaphrase,
  kJailbreak,
};
std::string to_string(TextTechnique t);
TextTechnique text_technique_from_string(const std::string& s);

struct AugmentTextOptions {
  std::string variant_id;          // fresh id for the variant
  std::string jailbreak_template;  // must contain {question}
};

// Rewrites the question under one technique; the variant keeps category,
// strategy and interaction_note, and records the parent id. A refusal
// marks only the variant Failed.
Sample augment_text(const Sample& sample, TextTechnique technique,
                    ModelGateway& gateway, const EndpointConfig& generator,
                    const AugmentTextOptions& opts);

// Deterministic seeded sample of n per strategy, written as a
// tab-delimited human-review sheet with a blank verdict column.
std::string emit_audit_sheet(const std::vector<Sample>& samples,
                             std::size_t n_per_strategy, std::uint64_t seed);

}  // namespace msb

#endif  // MSB_SYNTHESIZE_HPP_
