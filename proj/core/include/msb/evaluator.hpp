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

#ifndef MSB_EVALUATOR_HPP_
#define MSB_EVALUATOR_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msb/gateway.hpp"
#include "msb/pool_io.hpp"
#include "msb/selector.hpp"

namespace msb {

// One target-model response. Failed rows record the gateway error and are
// excluded from ASR denominators.
struct LedgerRow {
  std::string sample_id;
  std::string category;
  std::string response;
  bool failed = false;
  std::string error;
};

struct ResponseLedger {
  std::string model_id;
  std::string benchmark_hash;
  std::vector<LedgerRow> rows;
};

// Append-only line-delimited ledger; appending a row is a single write so
// an interrupted run resumes at sample granularity.
void append_ledger_row(const std::string& path, const LedgerRow& row);
void write_ledger_header(const std::string& path, const std::string& model_id,
                         const std::string& benchmark_hash);
ResponseLedger read_ledger(const std::string& path);

// Runs one target model over every benchmark sample, persisting each
// response as it arrives. Samples already present in the ledger file are
// skipped, so a crashed run resumes without duplicate rows.
ResponseLedger run_model(const Benchmark& benchmark, const Pool& pool,
                         const EndpointConfig& target, ModelGateway& gateway,
                         const std::string& ledger_path);

struct AsrResult {
  double overall = 0.0;
  std::map<std::string, double> per_category;
  std::size_t judged = 0;    // responses entering the denominator
  std::size_t failed = 0;    // transport failures, excluded
  std::size_t excluded = 0;  // all-judge parse failures, excluded
};

// Judges every non-failed ledger row with all configured judges,
// binarizes the judge-mean by `threshold` (strict >), and counts the
// harmful fraction overall and per category.
AsrResult asr(const ResponseLedger& ledger, const Pool& pool,
              const std::vector<EndpointConfig>& judges, ModelGateway& gateway,
              double threshold = 0.5);

struct QualityMetrics {
  double mean = 0.0;
  std::optional<double> mad;  // absent with a single model
  std::optional<double> gap;
  double div = 0.0;  // mean insertion-time c_div from the manifest
};

// MEAN/MAD/GAP over the fleet ASRs plus DIV from the benchmark manifest.
QualityMetrics quality_metrics(const Benchmark& benchmark,
                               const std::vector<double>& asr_per_model);

// Leave-one-out DIV alternative (flagged; insertion-time is the default).
double div_leave_one_out(const Benchmark& benchmark, const SamplePool& store);

struct ModelReport {
  std::string model_id;
  AsrResult asr;
  double sr = 0.0;  // 1 - asr.overall, exact
};

// Models sorted by SR descending, ties by model name; rendered with the
// per-category columns Privacy/Bias/Toxic/Legal/Misinfo/Health, ASR, SR.
std::vector<ModelReport> rank_leaderboard(std::vector<ModelReport> reports);
std::string render_leaderboard(const std::vector<ModelReport>& ranked,
                               const std::vector<std::string>& categories);

struct SweepPoint {
  std::string varied;        // "alpha", "beta", "gamma" or "n_max"
  double grid_value = 0.0;
  QualityMetrics metrics;
  std::vector<double> asr_per_model;
};

// Re-runs selection for each grid value of one weight, splitting the
// remainder equally over the other two, and reports the fleet metrics.
// Fleet ASRs come from the per-model harm flags in the judged scores.
std::vector<SweepPoint> sweep_weights(const SamplePool& pool,
                                      const std::vector<SampleScores>& scores,
                                      const std::string& varied,
                                      const std::vector<double>& grid,
                                      std::size_t n_max,
                                      std::size_t n_categories);

std::vector<SweepPoint> sweep_sizes(const SamplePool& pool,
                                    const std::vector<SampleScores>& scores,
                                    const CriterionWeights& w,
                                    const std::vector<std::size_t>& sizes,
                                    std::size_t n_categories);

// Delimited table for plotting tools.
std::string render_sweep(const std::vector<SweepPoint>& points,
                         const std::vector<std::string>& model_ids);

}  // namespace msb

#endif  // MSB_EVALUATOR_HPP_
