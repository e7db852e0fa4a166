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

#include "msb/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "msb/criteria.hpp"
#include "msb/util.hpp"

namespace msb {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::unordered_map<std::string, const Sample*> index_pool(const Pool& pool) {
  std::unordered_map<std::string, const Sample*> idx;
  for (const auto& s : pool.samples) idx[s.id] = &s;
  return idx;
}

// Table 4 style short headers for the default taxonomy.
std::string short_category(const std::string& c) {
  static const std::map<std::string, std::string> kShort = {
      {"Privacy", "Privacy"},     {"Bias", "Bias"},
      {"Toxicity", "Toxic"},      {"Legality", "Legal"},
      {"Misinformation", "Misinfo"}, {"Health Risk", "Health"}};
  auto it = kShort.find(c);
  if (it != kShort.end()) return it->second;
  return c.size() > 7 ? c.substr(0, 7) : c;
}

}  // namespace

void write_ledger_header(const std::string& path, const std::string& model_id,
                         const std::string& benchmark_hash) {
  json rec;
  rec["record"] = "header";
  rec["model_id"] = model_id;
  rec["benchmark_hash"] = benchmark_hash;
  write_file(path, rec.dump() + "\n");
}

void append_ledger_row(const std::string& path, const LedgerRow& row) {
  json rec;
  rec["record"] = "response";
  rec["sample_id"] = row.sample_id;
  rec["category"] = row.category;
  rec["response"] = row.response;
  rec["failed"] = row.failed;
  rec["error"] = row.error;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw DataError("cannot append to ledger: " + path);
  out << rec.dump() << "\n";
}

ResponseLedger read_ledger(const std::string& path) {
  ResponseLedger ledger;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    const std::string kind = rec.at("record");
    if (kind == "header") {
      ledger.model_id = rec.at("model_id");
      ledger.benchmark_hash = rec.at("benchmark_hash");
    } else if (kind == "response") {
      LedgerRow row;
      row.sample_id = rec.at("sample_id");
      row.category = rec.at("category");
      row.response = rec.at("response");
      row.failed = rec.at("failed");
      row.error = rec.at("error");
      ledger.rows.push_back(std::move(row));
    } else {
      throw DataError("unknown ledger record kind: " + kind);
    }
  }
  return ledger;
}

ResponseLedger run_model(const Benchmark& benchmark, const Pool& pool,
                         const EndpointConfig& target, ModelGateway& gateway,
                         const std::string& ledger_path) {
  auto idx = index_pool(pool);

  std::unordered_set<std::string> done;
  if (fs::exists(ledger_path)) {
    ResponseLedger existing = read_ledger(ledger_path);
    if (existing.model_id != target.model_name)
      throw DataError("ledger " + ledger_path + " belongs to model " +
                      existing.model_id);
    for (const auto& r : existing.rows) done.insert(r.sample_id);
  } else {
    write_ledger_header(ledger_path, target.model_name,
                        benchmark.manifest_hash);
  }

  for (const auto& entry : benchmark.entries) {
    if (done.count(entry.sample_id)) continue;
    auto it = idx.find(entry.sample_id);
    if (it == idx.end())
      throw DataError("benchmark sample not in pool: " + entry.sample_id);
    const Sample& s = *it->second;
    LedgerRow row;
    row.sample_id = s.id;
    row.category = s.category;
    try {
      row.response = gateway.chat(target, s.question, s.image_ref);
    } catch (const GatewayError& e) {
      row.failed = true;
      row.error = e.what();
    }
    append_ledger_row(ledger_path, row);
  }
  return read_ledger(ledger_path);
}

AsrResult asr(const ResponseLedger& ledger, const Pool& pool,
              const std::vector<EndpointConfig>& judges, ModelGateway& gateway,
              double threshold) {
  if (judges.empty()) throw ConfigError("asr needs at least one judge");
  auto idx = index_pool(pool);

  AsrResult res;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_cat;
  std::size_t harmful_total = 0;

  for (const auto& row : ledger.rows) {
    if (row.failed) {
      res.failed += 1;
      continue;
    }
    auto it = idx.find(row.sample_id);
    const std::string image =
        it != idx.end() ? it->second->image_ref : std::string();
    const std::string question =
        it != idx.end() ? it->second->question : std::string();

    std::vector<double> probs;
    for (const auto& judge_ep : judges) {
      try {
        probs.push_back(gateway.judge(judge_ep, question, image, row.response));
      } catch (const JudgeParseError&) {
        // cell marked missing; the mean uses the judges that parsed
      }
    }
    if (probs.empty()) {
      res.excluded += 1;
      continue;
    }
    double mean = 0.0;
    for (double p : probs) mean += p;
    mean /= static_cast<double>(probs.size());
    const bool harmful = mean > threshold;

    res.judged += 1;
    harmful_total += harmful ? 1 : 0;
    auto& [n, h] = per_cat[row.category];
    n += 1;
    h += harmful ? 1 : 0;
  }
  if (res.judged == 0) throw DomainError("no judged responses");
  res.overall =
      static_cast<double>(harmful_total) / static_cast<double>(res.judged);
  for (const auto& [cat, nh] : per_cat)
    res.per_category[cat] =
        static_cast<double>(nh.second) / static_cast<double>(nh.first);
  return res;
}

QualityMetrics quality_metrics(const Benchmark& benchmark,
                               const std::vector<double>& asr_per_model) {
  if (asr_per_model.empty())
    throw DomainError("quality metrics need at least one model");
  QualityMetrics m;
  double sum = 0.0;
  for (double a : asr_per_model) sum += a;
  m.mean = sum / static_cast<double>(asr_per_model.size());
  if (asr_per_model.size() >= 2) {
    double dev = 0.0;
    double lo = asr_per_model[0], hi = asr_per_model[0];
    for (double a : asr_per_model) {
      dev += std::abs(a - m.mean);
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    m.mad = dev / static_cast<double>(asr_per_model.size());
    m.gap = hi - lo;
  }
  if (!benchmark.entries.empty()) {
    double div_sum = 0.0;
    for (const auto& e : benchmark.entries) div_sum += e.scores.c_div;
    m.div = div_sum / static_cast<double>(benchmark.entries.size());
  }
  return m;
}

double div_leave_one_out(const Benchmark& benchmark, const SamplePool& store) {
  if (benchmark.entries.empty()) return 0.0;
  // Reuse the leave-one-out machinery with pure-diversity weights.
  CriterionWeights div_only{0.0, 0.0, 1.0};
  const auto scores = score_leave_one_out(benchmark, store, div_only);
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

std::vector<ModelReport> rank_leaderboard(std::vector<ModelReport> reports) {
  for (auto& r : reports) r.sr = 1.0 - r.asr.overall;
  std::sort(reports.begin(), reports.end(),
            [](const ModelReport& a, const ModelReport& b) {
              if (a.sr != b.sr) return a.sr > b.sr;
              return a.model_id < b.model_id;
            });
  return reports;
}

std::string render_leaderboard(const std::vector<ModelReport>& ranked,
                               const std::vector<std::string>& categories) {
  std::ostringstream out;
  out << std::left << std::setw(28) << "Model";
  for (const auto& c : categories)
    out << std::right << std::setw(9) << short_category(c);
  out << std::right << std::setw(9) << "ASR" << std::setw(9) << "SR" << "\n";
  out << std::setprecision(2) << std::fixed;
  for (const auto& r : ranked) {
    out << std::left << std::setw(28) << r.model_id;
    for (const auto& c : categories) {
      auto it = r.asr.per_category.find(c);
      if (it == r.asr.per_category.end())
        out << std::right << std::setw(9) << "-";
      else
        out << std::right << std::setw(9) << 100.0 * it->second;
    }
    out << std::right << std::setw(9) << 100.0 * r.asr.overall << std::setw(9)
        << 100.0 * r.sr << "\n";
  }
  return out.str();
}

namespace {

// Fleet ASRs over a selected subset, from the binarized per-model flags.
std::vector<double> fleet_asr(const Benchmark& b,
                              const std::vector<SampleScores>& scores) {
  std::unordered_map<std::string, const SampleScores*> by_id;
  for (const auto& s : scores) by_id[s.sample_id] = &s;
  std::size_t n_models = 0;
  for (const auto& s : scores) n_models = std::max(n_models, s.matrix.n_models());
  std::vector<double> harmful(n_models, 0.0);
  std::size_t counted = 0;
  for (const auto& e : b.entries) {
    auto it = by_id.find(e.sample_id);
    if (it == by_id.end()) continue;
    const auto& flags = it->second->matrix.harm_flags;
    counted += 1;
    for (std::size_t j = 0; j < flags.size() && j < n_models; ++j)
      harmful[j] += flags[j] ? 1.0 : 0.0;
  }
  if (counted == 0) return {};
  for (double& h : harmful) h /= static_cast<double>(counted);
  return harmful;
}

}  // namespace

std::vector<SweepPoint> sweep_weights(const SamplePool& pool,
                                      const std::vector<SampleScores>& scores,
                                      const std::string& varied,
                                      const std::vector<double>& grid,
                                      std::size_t n_max,
                                      std::size_t n_categories) {
  if (varied != "alpha" && varied != "beta" && varied != "gamma")
    throw ConfigError("sweep weight must be alpha, beta or gamma");
  std::vector<SweepPoint> out;
  for (double v : grid) {
    if (v < 0.0 || v > 1.0)
      throw ConfigError("grid point off the weight simplex: " +
                        format_double(v));
    // The remaining two weights split the rest equally.
    const double rest = (1.0 - v) / 2.0;
    CriterionWeights w;
    if (varied == "alpha") w = {v, rest, rest};
    else if (varied == "beta") w = {rest, v, rest};
    else w = {rest, rest, v};
    w.validate();
    Benchmark b = select(pool, w, n_max, n_categories);
    SweepPoint p;
    p.varied = varied;
    p.grid_value = v;
    p.asr_per_model = fleet_asr(b, scores);
    p.metrics = quality_metrics(b, p.asr_per_model);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SweepPoint> sweep_sizes(const SamplePool& pool,
                                    const std::vector<SampleScores>& scores,
                                    const CriterionWeights& w,
                                    const std::vector<std::size_t>& sizes,
                                    std::size_t n_categories) {
  w.validate();
  std::vector<SweepPoint> out;
  for (std::size_t n : sizes) {
    Benchmark b = select(pool, w, n, n_categories);
    SweepPoint p;
    p.varied = "n_max";
    p.grid_value = static_cast<double>(n);
    p.asr_per_model = fleet_asr(b, scores);
    p.metrics = quality_metrics(b, p.asr_per_model);
    out.push_back(std::move(p));
  }
  return out;
}

std::string render_sweep(const std::vector<SweepPoint>& points,
                         const std::vector<std::string>& model_ids) {
  std::ostringstream out;
  out << "varied\tvalue\tMAD\tMEAN\tGAP\tDIV";
  for (const auto& m : model_ids) out << "\tASR:" << m;
  out << "\n";
  for (const auto& p : points) {
    out << p.varied << "\t" << format_double(p.grid_value) << "\t"
        << (p.metrics.mad ? format_double(*p.metrics.mad) : "-") << "\t"
        << format_double(p.metrics.mean) << "\t"
        << (p.metrics.gap ? format_double(*p.metrics.gap) : "-") << "\t"
        << format_double(p.metrics.div);
    for (std::size_t j = 0; j < model_ids.size(); ++j)
      out << "\t"
          << (j < p.asr_per_model.size() ? format_double(p.asr_per_model[j])
                                         : "-");
    out << "\n";
  }
  return out.str();
}

}  // namespace msb
