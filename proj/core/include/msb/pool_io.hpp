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

#ifndef MSB_POOL_IO_HPP_
#define MSB_POOL_IO_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msb/selector.hpp"
#include "msb/types.hpp"

namespace msb {

// A raw or preprocessed pool: one sample record per line plus an optional
// sidecar of little-endian float32 embeddings, row-major, row order equal
// to record order.
struct Pool {
  std::vector<Sample> samples;
  std::vector<Embedding> embeddings;          // empty or same length
  std::map<std::string, std::string> provenance;  // recorded in the header

  bool has_embeddings() const { return !embeddings.empty(); }
};

void write_pool(const Pool& pool, const std::string& records_path,
                const std::string& embeddings_path = "");
Pool read_pool(const std::string& records_path,
               const std::string& embeddings_path = "");

// SHA-256 over the canonical record bytes; identifies the pool in
// benchmark provenance.
std::string pool_digest(const Pool& pool);

// Rejection log record. Reason codes are machine-readable strings:
// short_prompt, low_resolution, decode_error, duplicate,
// below_harm_margin, uncategorized.
struct Rejection {
  std::string id;
  std::string reason;
  std::string detail;
};

void write_rejections(const std::vector<Rejection>& rejections,
                      const std::string& path);
std::vector<Rejection> read_rejections(const std::string& path);

// Per-sample judging output, one record per line.
struct SampleScores {
  std::string sample_id;
  JudgmentMatrix matrix;
  double p_h = 0.0;
  double c_sep = 0.0;
  double c_harm = 0.0;
};

void write_scores(const std::vector<SampleScores>& scores,
                  const std::string& path);
std::vector<SampleScores> read_scores(const std::string& path);

// Assembles the selector's input from a pool with embeddings plus judged
// scores; samples without scores are skipped when allow_missing is true,
// otherwise they raise DataError naming the id.
SamplePool build_scored_pool(const Pool& pool,
                             const std::vector<SampleScores>& scores,
                             const std::vector<std::string>& taxonomy,
                             bool allow_missing = true);

}  // namespace msb

#endif  // MSB_POOL_IO_HPP_
