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

#include "msb/config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "msb/util.hpp"

namespace msb {
namespace {

using nlohmann::json;

Role role_from_string(const std::string& s) {
  if (s == "generator") return Role::kGenerator;
  if (s == "target") return Role::kTargetModel;
  if (s == "judge") return Role::kJudge;
  if (s == "embedder") return Role::kEmbedder;
  throw ConfigError("unknown endpoint role: " + s);
}

EndpointConfig endpoint_from_json(const json& j, Role default_role) {
  EndpointConfig ep;
  ep.role = j.contains("role") ? role_from_string(j.at("role")) : default_role;
  ep.base_url = j.value("base_url", "");
  ep.model_name = j.value("model_name", "");
  ep.auth_ref = j.value("auth_ref", "");
  ep.temperature = j.value("temperature", 1.0);
  ep.max_tokens = j.value("max_tokens", 256);
  ep.rate_limit_rpm = j.value("rate_limit_rpm", 600.0);
  if (j.contains("retry")) {
    ep.retry.max_attempts = j.at("retry").value("max_attempts", 3);
    ep.retry.backoff_base_seconds =
        j.at("retry").value("backoff_base_seconds", 0.25);
  }
  ep.judge_adapter = j.value("judge_adapter", "auto");
  ep.validate();
  return ep;
}

json endpoint_to_json(const EndpointConfig& ep) {
  json j;
  j["role"] = to_string(ep.role);
  j["base_url"] = ep.base_url;
  j["model_name"] = ep.model_name;
  j["auth_ref"] = ep.auth_ref;
  j["temperature"] = ep.temperature;
  j["max_tokens"] = ep.max_tokens;
  j["rate_limit_rpm"] = ep.rate_limit_rpm;
  j["retry"] = {{"max_attempts", ep.retry.max_attempts},
                {"backoff_base_seconds", ep.retry.backoff_base_seconds}};
  j["judge_adapter"] = ep.judge_adapter;
  return j;
}

json config_to_json(const EngineConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["weights"] = {{"alpha", cfg.weights.alpha},
                  {"beta", cfg.weights.beta},
                  {"gamma", cfg.weights.gamma}};
  j["n_max"] = cfg.n_max;
  j["binarization_threshold"] = cfg.binarization_threshold;
  j["min_judges"] = cfg.min_judges;
  j["taxonomy"] = {{"categories", cfg.taxonomy.categories},
                   {"descriptions", cfg.taxonomy.descriptions},
                   {"subcategories", cfg.taxonomy.subcategories}};
  j["preprocess"] = {{"min_chars", cfg.preprocess.min_chars},
                     {"min_width", cfg.preprocess.min_width},
                     {"min_height", cfg.preprocess.min_height},
                     {"dedup_threshold", cfg.preprocess.dedup_threshold},
                     {"harm_margin", cfg.preprocess.harm_margin},
                     {"run_harm_filter", cfg.preprocess.run_harm_filter},
                     {"run_resolution_filter",
                      cfg.preprocess.run_resolution_filter},
                     {"run_categorize", cfg.preprocess.run_categorize},
                     {"harm_prompts", cfg.preprocess.harm_prompts},
                     {"neutral_prompts", cfg.preprocess.neutral_prompts}};
  j["harm_lexicon"] = cfg.harm_lexicon;
  j["jailbreak_template"] = cfg.jailbreak_template;
  j["templates_dir"] = cfg.templates_dir;
  j["cache"] = {{"dir", cfg.cache_dir}, {"mode", to_string(cfg.cache_mode)}};
  j["endpoints"] = {{"generator", endpoint_to_json(cfg.generator)},
                    {"embedder", endpoint_to_json(cfg.embedder)},
                    {"judges", json::array()},
                    {"targets", json::array()}};
  for (const auto& ep : cfg.judges)
    j["endpoints"]["judges"].push_back(endpoint_to_json(ep));
  for (const auto& ep : cfg.targets)
    j["endpoints"]["targets"].push_back(endpoint_to_json(ep));
  return j;
}

}  // namespace

std::string EngineConfig::resolved_json() const {
  return config_to_json(*this).dump();
}

void EngineConfig::validate() const {
  weights.validate();
  taxonomy.validate();
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  if (binarization_threshold < 0.0 || binarization_threshold > 1.0)
    throw ConfigError("binarization threshold outside [0,1]");
}

EngineConfig load_config(const std::string& path, bool apply_env) {
  json j = json::parse(read_file(path));
  EngineConfig cfg;
  cfg.taxonomy = default_taxonomy();

  cfg.seed = j.value("seed", 0ULL);
  cfg.workers = j.value("workers", 1ULL);
  if (j.contains("weights")) {
    cfg.weights.alpha = j.at("weights").value("alpha", 0.5);
    cfg.weights.beta = j.at("weights").value("beta", 0.3);
    cfg.weights.gamma = j.at("weights").value("gamma", 0.2);
  }
  cfg.n_max = j.value("n_max", 4000ULL);
  cfg.binarization_threshold = j.value("binarization_threshold", 0.5);
  cfg.min_judges = j.value("min_judges", 3ULL);

  if (j.contains("taxonomy")) {
    const auto& t = j.at("taxonomy");
    if (t.contains("categories"))
      cfg.taxonomy.categories = t.at("categories").get<std::vector<std::string>>();
    if (t.contains("descriptions"))
      cfg.taxonomy.descriptions =
          t.at("descriptions").get<std::map<std::string, std::string>>();
    if (t.contains("subcategories"))
      cfg.taxonomy.subcategories =
          t.at("subcategories")
              .get<std::map<std::string, std::vector<std::string>>>();
  }
  if (j.contains("preprocess")) {
    const auto& p = j.at("preprocess");
    cfg.preprocess.min_chars = p.value("min_chars", 25ULL);
    cfg.preprocess.min_width = p.value("min_width", 224ULL);
    cfg.preprocess.min_height = p.value("min_height", 224ULL);
    cfg.preprocess.dedup_threshold = p.value("dedup_threshold", 0.95);
    cfg.preprocess.harm_margin = p.value("harm_margin", 0.0);
    cfg.preprocess.run_harm_filter = p.value("run_harm_filter", false);
    cfg.preprocess.run_resolution_filter =
        p.value("run_resolution_filter", true);
    cfg.preprocess.run_categorize = p.value("run_categorize", false);
    if (p.contains("harm_prompts"))
      cfg.preprocess.harm_prompts =
          p.at("harm_prompts").get<std::vector<std::string>>();
    if (p.contains("neutral_prompts"))
      cfg.preprocess.neutral_prompts =
          p.at("neutral_prompts").get<std::vector<std::string>>();
  }
  if (j.contains("harm_lexicon"))
    cfg.harm_lexicon = j.at("harm_lexicon").get<std::vector<std::string>>();
  cfg.jailbreak_template = j.value("jailbreak_template", cfg.jailbreak_template);
  cfg.templates_dir = j.value("templates_dir", "");
  if (j.contains("cache")) {
    cfg.cache_dir = j.at("cache").value("dir", "cache");
    cfg.cache_mode =
        cache_mode_from_string(j.at("cache").value("mode", "passthrough"));
  }
  if (j.contains("endpoints")) {
    const auto& e = j.at("endpoints");
    if (e.contains("generator"))
      cfg.generator = endpoint_from_json(e.at("generator"), Role::kGenerator);
    if (e.contains("embedder"))
      cfg.embedder = endpoint_from_json(e.at("embedder"), Role::kEmbedder);
    if (e.contains("judges"))
      for (const auto& je : e.at("judges"))
        cfg.judges.push_back(endpoint_from_json(je, Role::kJudge));
    if (e.contains("targets"))
      for (const auto& te : e.at("targets"))
        cfg.targets.push_back(endpoint_from_json(te, Role::kTargetModel));
  }

  if (apply_env) {
    if (const char* v = std::getenv("MSB_CACHE_MODE"))
      cfg.cache_mode = cache_mode_from_string(v);
    if (const char* v = std::getenv("MSB_CACHE_DIR")) cfg.cache_dir = v;
    if (const char* v = std::getenv("MSB_SEED"))
      cfg.seed = std::strtoull(v, nullptr, 10);
  }
  cfg.validate();
  return cfg;
}

void save_config(const EngineConfig& cfg, const std::string& path) {
  write_file(path, config_to_json(cfg).dump(2) + "\n");
}

}  // namespace msb
