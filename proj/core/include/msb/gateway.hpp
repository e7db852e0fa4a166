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

#ifndef MSB_GATEWAY_HPP_
#define MSB_GATEWAY_HPP_

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "msb/types.hpp"

namespace msb {

enum class Role { kGenerator, kTargetModel, kJudge, kEmbedder };
enum class CacheMode { kRecord, kReplay, kPassthrough };

std::string to_string(Role r);
std::string to_string(CacheMode m);
CacheMode cache_mode_from_string(const std::string& s);

struct RetryPolicy {
  int max_attempts = 3;
  double backoff_base_seconds = 0.25;
};

struct EndpointConfig {
  Role role = Role::kGenerator;
  std::string base_url;     // e.g. http://host:port/v1
  std::string model_name;
  std::string auth_ref;     // name of the env var holding the key
  double temperature = 1.0;
  int max_tokens = 256;
  double rate_limit_rpm = 600.0;  // requests per minute, token bucket
  RetryPolicy retry;
  // Judge output mapping: "label" (safe/unsafe words), "numeric"
  // (probability in the text), or "auto" (numeric first, then label).
  std::string judge_adapter = "auto";

  void validate() const;  // throws ConfigError
};

// Canonical request identity: role, model, prompt/content and sampling
// params serialized with sorted fields and declared float formatting,
// hashed with SHA-256. Stable across platforms.
struct CanonicalRequest {
  std::string role;
  std::string model;
  std::string prompt;
  std::string image;  // base64 or content address; empty if none
  double temperature = 1.0;
  int max_tokens = 256;

  std::string canonical_json() const;
  std::string digest() const;
};

// One file per request digest under the cache directory, holding the
// canonical request and the raw response. In Replay mode a miss is an
// error, never a live call.
class ReplayCache {
 public:
  ReplayCache() = default;
  ReplayCache(std::string directory, CacheMode mode);

  CacheMode mode() const { return mode_; }
  const std::string& directory() const { return dir_; }

  std::optional<std::string> lookup(const std::string& digest) const;
  void store(const std::string& digest, const std::string& request_json,
             const std::string& response);

 private:
  std::string dir_;
  CacheMode mode_ = CacheMode::kPassthrough;
  mutable std::mutex write_mu_;
};

// Maps a judge's raw completion to a probability in [0, 1]; throws
// JudgeParseError when no adapter rule applies.
double parse_judge_output(const std::string& raw, const std::string& adapter);

// Single point of network activity for the whole engine. Thread-safe;
// callers share per-endpoint token buckets.
class ModelGateway {
 public:
  ModelGateway(std::string cache_dir, CacheMode mode);

  // Chat/vision completion for Generator, TargetModel and Judge roles.
  std::string chat(const EndpointConfig& ep, const std::string& prompt,
                   const std::string& image = "");

  // Judges one (question, image, response) triple.
  double judge(const EndpointConfig& judge_ep, const std::string& question,
               const std::string& image, const std::string& response);

  // Joint image-text embedding: normalized concatenation of the per-
  // modality vectors. An absent image fills its slot with zeros.
  Embedding embed(const EndpointConfig& ep, const std::string& image,
                  const std::string& text);

  // Single-modality embeddings (harm filtering and categorization work on
  // the image alone).
  Embedding embed_image(const EndpointConfig& ep, const std::string& image);
  Embedding embed_text(const EndpointConfig& ep, const std::string& text);

  const ReplayCache& cache() const { return cache_; }

 private:
  std::string complete(const EndpointConfig& ep,
                       const CanonicalRequest& req);
  std::vector<float> embed_one(const EndpointConfig& ep,
                               const std::string& input);
  std::string http_post(const EndpointConfig& ep, const std::string& path,
                        const std::string& body, const std::string& digest);
  void rate_limit(const EndpointConfig& ep);

  ReplayCache cache_;
  struct Bucket {
    double tokens = 0.0;
    std::chrono::steady_clock::time_point last;
  };
  std::mutex buckets_mu_;
  std::map<std::string, Bucket> buckets_;
};

// Builds the default judging prompt.
std::string judge_prompt(const std::string& question,
                         const std::string& response);

}  // namespace msb

#endif  // MSB_GATEWAY_HPP_
