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

#include "msb/pool_io.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "msb/criteria.hpp"
#include "msb/util.hpp"

namespace msb {
namespace {

using nlohmann::json;

constexpr char kEmbeddingMagic[8] = {'M', 'S', 'B', 'E', 'M', 'B', '1', '\n'};

json sample_to_json(const Sample& s) {
  json rec;
  rec["record"] = "sample";
  rec["id"] = s.id;
  rec["image_ref"] = s.image_ref;
  rec["question"] = s.question;
  rec["category"] = s.category;
  rec["subcategory"] = s.subcategory;
  rec["strategy"] = to_string(s.strategy);
  rec["quadrant"] = to_string(s.quadrant);
  rec["source"] = to_string(s.source);
  rec["interaction_note"] = s.interaction_note;
  rec["parent_id"] = s.parent_id;
  rec["failed"] = s.failed;
  rec["failure_note"] = s.failure_note;
  return rec;
}

Sample sample_from_json(const json& rec) {
  Sample s;
  s.id = rec.at("id");
  s.image_ref = rec.at("image_ref");
  s.question = rec.at("question");
  s.category = rec.at("category");
  s.subcategory = rec.at("subcategory");
  s.strategy = strategy_from_string(rec.at("strategy"));
  s.quadrant = quadrant_from_string(rec.at("quadrant"));
  s.source = source_from_string(rec.at("source"));
  s.interaction_note = rec.at("interaction_note");
  s.parent_id = rec.at("parent_id");
  s.failed = rec.at("failed");
  s.failure_note = rec.at("failure_note");
  return s;
}

std::string pool_record_bytes(const Pool& pool) {
  std::ostringstream out;
  json header;
  header["record"] = "header";
  header["count"] = pool.samples.size();
  header["provenance"] = pool.provenance;
  out << header.dump() << "\n";
  for (const auto& s : pool.samples) out << sample_to_json(s).dump() << "\n";
  return out.str();
}

void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void write_pool(const Pool& pool, const std::string& records_path,
                const std::string& embeddings_path) {
  if (pool.has_embeddings() &&
      pool.embeddings.size() != pool.samples.size())
    throw DataError("embedding row count != sample count");
  write_file(records_path, pool_record_bytes(pool));
  if (embeddings_path.empty()) return;
  if (!pool.has_embeddings())
    throw DataError("embedding sidecar requested but pool has no embeddings");
  const std::uint32_t count = static_cast<std::uint32_t>(pool.samples.size());
  const std::uint32_t dim =
      static_cast<std::uint32_t>(pool.embeddings[0].dim());
  std::string bytes(kEmbeddingMagic, sizeof(kEmbeddingMagic));
  put_u32le(bytes, count);
  put_u32le(bytes, dim);
  for (const auto& e : pool.embeddings) {
    if (e.dim() != dim) throw DataError("embedding dimension drift in pool");
    for (float x : e.vector()) {
      std::uint32_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      put_u32le(bytes, bits);
    }
  }
  write_file(embeddings_path, bytes);
}

Pool read_pool(const std::string& records_path,
               const std::string& embeddings_path) {
  Pool pool;
  std::istringstream in(read_file(records_path));
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    const std::string kind = rec.at("record");
    if (kind == "header") {
      have_header = true;
      if (rec.contains("provenance"))
        pool.provenance =
            rec.at("provenance").get<std::map<std::string, std::string>>();
    } else if (kind == "sample") {
      pool.samples.push_back(sample_from_json(rec));
    } else {
      throw DataError("unknown pool record kind: " + kind);
    }
  }
  if (!have_header) throw DataError("pool file missing header: " + records_path);

  if (!embeddings_path.empty()) {
    const std::string bytes = read_file(embeddings_path);
    if (bytes.size() < sizeof(kEmbeddingMagic) + 8 ||
        std::memcmp(bytes.data(), kEmbeddingMagic, sizeof(kEmbeddingMagic)) !=
            0)
      throw DataError("bad embedding sidecar header: " + embeddings_path);
    const auto* p =
        reinterpret_cast<const unsigned char*>(bytes.data()) +
        sizeof(kEmbeddingMagic);
    const std::uint32_t count = get_u32le(p);
    const std::uint32_t dim = get_u32le(p + 4);
    if (count != pool.samples.size())
      throw DataError("embedding sidecar count != sample count");
    const std::size_t need =
        sizeof(kEmbeddingMagic) + 8 +
        static_cast<std::size_t>(count) * dim * sizeof(float);
    if (bytes.size() != need)
      throw DataError("embedding sidecar truncated: " + embeddings_path);
    p += 8;
    pool.embeddings.reserve(count);
    for (std::uint32_t r = 0; r < count; ++r) {
      std::vector<float> v(dim);
      for (std::uint32_t c = 0; c < dim; ++c) {
        std::uint32_t bits = get_u32le(p);
        p += 4;
        std::memcpy(&v[c], &bits, sizeof(float));
      }
      pool.embeddings.emplace_back(std::move(v));
    }
  }
  return pool;
}

std::string pool_digest(const Pool& pool) {
  return sha256_hex(pool_record_bytes(pool));
}

void write_rejections(const std::vector<Rejection>& rejections,
                      const std::string& path) {
  std::ostringstream out;
  for (const auto& r : rejections) {
    json rec;
    rec["record"] = "rejection";
    rec["id"] = r.id;
    rec["reason"] = r.reason;
    rec["detail"] = r.detail;
    out << rec.dump() << "\n";
  }
  write_file(path, out.str());
}

std::vector<Rejection> read_rejections(const std::string& path) {
  std::vector<Rejection> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    out.push_back({rec.at("id"), rec.at("reason"), rec.at("detail")});
  }
  return out;
}

void write_scores(const std::vector<SampleScores>& scores,
                  const std::string& path) {
  std::ostringstream out;
  for (const auto& s : scores) {
    json rec;
    rec["record"] = "scores";
    rec["sample_id"] = s.sample_id;
    rec["judge_ids"] = s.matrix.judge_ids;
    rec["model_ids"] = s.matrix.model_ids;
    rec["probs"] = s.matrix.probs;
    rec["harm_flags"] = s.matrix.harm_flags;
    rec["p_h"] = s.p_h;
    rec["c_sep"] = s.c_sep;
    rec["c_harm"] = s.c_harm;
    out << rec.dump() << "\n";
  }
  write_file(path, out.str());
}

std::vector<SampleScores> read_scores(const std::string& path) {
  std::vector<SampleScores> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    SampleScores s;
    s.sample_id = rec.at("sample_id");
    s.matrix.judge_ids = rec.at("judge_ids").get<std::vector<std::string>>();
    s.matrix.model_ids = rec.at("model_ids").get<std::vector<std::string>>();
    s.matrix.probs =
        rec.at("probs").get<std::vector<std::vector<double>>>();
    s.matrix.harm_flags = rec.at("harm_flags").get<std::vector<bool>>();
    s.p_h = rec.at("p_h");
    s.c_sep = rec.at("c_sep");
    s.c_harm = rec.at("c_harm");
    out.push_back(std::move(s));
  }
  return out;
}

SamplePool build_scored_pool(const Pool& pool,
                             const std::vector<SampleScores>& scores,
                             const std::vector<std::string>& taxonomy,
                             bool allow_missing) {
  if (!pool.has_embeddings())
    throw DataError("scored pool requires embeddings");
  std::unordered_map<std::string, const SampleScores*> by_id;
  for (const auto& s : scores) by_id[s.sample_id] = &s;

  std::vector<ScoredSample> out;
  for (std::size_t i = 0; i < pool.samples.size(); ++i) {
    const Sample& s = pool.samples[i];
    auto it = by_id.find(s.id);
    if (it == by_id.end()) {
      if (allow_missing) continue;
      throw DataError("missing scores for sample " + s.id);
    }
    auto cat = std::find(taxonomy.begin(), taxonomy.end(), s.category);
    if (cat == taxonomy.end())
      throw DataError("sample " + s.id + " category not in taxonomy: " +
                      s.category);
    ScoredSample ss;
    ss.id = s.id;
    ss.category = static_cast<std::size_t>(cat - taxonomy.begin());
    ss.embedding = pool.embeddings[i];
    ss.p_h = it->second->p_h;
    ss.c_sep = it->second->c_sep;
    ss.c_harm = it->second->c_harm;
    out.push_back(std::move(ss));
  }
  return SamplePool(std::move(out));
}

}  // namespace msb
