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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "msb/config.hpp"
#include "msb/errors.hpp"
#include "msb/evaluator.hpp"
#include "msb/fixtures.hpp"
#include "msb/image.hpp"
#include "msb/image_augment.hpp"
#include "msb/pipeline.hpp"
#include "msb/pool_io.hpp"
#include "msb/preprocess.hpp"
#include "msb/selector.hpp"
#include "msb/synthesize.hpp"

namespace {

using nlohmann::json;

// Flag values that override the env/config chain when set on the command
// line. Precedence: flags > environment > config file.
struct CommonFlags {
  std::string config_path;
  std::string cache_dir;
  std::string cache_mode;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  bool seed_set = false;
  bool workers_set = false;
};

void add_common(CLI::App* cmd, CommonFlags* f, bool config_required = true) {
  auto* c = cmd->add_option("--config", f->config_path, "Engine config file");
  if (config_required) c->required();
  cmd->add_option("--cache-dir", f->cache_dir, "Response cache directory");
  cmd->add_option("--cache-mode", f->cache_mode,
                  "record | replay | passthrough");
  cmd->add_option("--seed", f->seed, "Top-level RNG seed")
      ->each([f](const std::string&) { f->seed_set = true; });
  cmd->add_option("--workers", f->workers, "Worker cap for gateway stages")
      ->each([f](const std::string&) { f->workers_set = true; });
}

msb::EngineConfig resolve_config(const CommonFlags& f) {
  msb::EngineConfig cfg = msb::load_config(f.config_path);
  if (!f.cache_dir.empty()) cfg.cache_dir = f.cache_dir;
  if (!f.cache_mode.empty())
    cfg.cache_mode = msb::cache_mode_from_string(f.cache_mode);
  if (f.seed_set) cfg.seed = f.seed;
  if (f.workers_set) cfg.workers = f.workers;
  cfg.validate();
  return cfg;
}

msb::CriterionWeights parse_weights(const std::string& csv) {
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  if (v.size() != 3)
    throw msb::ConfigError("--weights expects alpha,beta,gamma");
  msb::CriterionWeights w{v[0], v[1], v[2]};
  w.validate();
  return w;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw msb::DataError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw msb::DataError("cannot write " + path);
  out << text;
}

msb::SelectOptions select_options(const msb::EngineConfig& cfg,
                                  const msb::Pool& pool) {
  msb::SelectOptions opts;
  opts.pool_digest = msb::pool_digest(pool);
  opts.engine_version = msb::kEngineVersion;
  opts.seed = cfg.seed;
  return opts;
}

int cmd_preprocess(const CommonFlags& f, const std::string& pool_path,
                   const std::string& emb_path, const std::string& out_path,
                   const std::string& out_emb, const std::string& rejects_path,
                   const std::string& quarantine_path) {
  msb::EngineConfig cfg = resolve_config(f);
  msb::Pool pool = msb::read_pool(pool_path, emb_path);
  const bool needs_gateway =
      cfg.preprocess.run_harm_filter || cfg.preprocess.run_categorize;
  std::unique_ptr<msb::ModelGateway> gw;
  if (needs_gateway)
    gw = std::make_unique<msb::ModelGateway>(cfg.cache_dir, cfg.cache_mode);
  msb::PreprocessResult res = msb::preprocess_pipeline(
      pool, cfg.preprocess, gw.get(), needs_gateway ? &cfg.embedder : nullptr,
      needs_gateway ? &cfg.generator : nullptr, cfg.taxonomy);
  msb::write_pool(res.pool, out_path, out_emb);
  if (!rejects_path.empty()) msb::write_rejections(res.rejections, rejects_path);
  if (!quarantine_path.empty()) msb::write_pool(res.quarantine, quarantine_path);
  std::printf("kept %zu, rejected %zu, quarantined %zu\n",
              res.pool.samples.size(), res.rejections.size(),
              res.quarantine.samples.size());
  return 0;
}

int cmd_generate(const CommonFlags& f, const std::string& images_path,
                 const std::string& strategy_name, const std::string& out_path,
                 const std::string& id_prefix, std::size_t audit_n,
                 const std::string& audit_out) {
  msb::EngineConfig cfg = resolve_config(f);
  const msb::Strategy strategy = msb::strategy_from_string(strategy_name);
  msb::StrategyTemplate tmpl = msb::default_template(strategy);
  if (!cfg.templates_dir.empty()) {
    for (const auto& t : msb::load_template_dir(cfg.templates_dir))
      if (t.strategy == strategy) tmpl = t;
  }
  msb::ModelGateway gw(cfg.cache_dir, cfg.cache_mode);
  msb::Pool out;
  out.provenance["stage"] = "generate";
  out.provenance["strategy"] = msb::to_string(strategy);
  std::size_t n_failed = 0;
  const std::vector<std::string> refs = read_lines(images_path);
  for (std::size_t i = 0; i < refs.size(); ++i) {
    msb::GeneratePairOptions opts;
    opts.harm_lexicon = cfg.harm_lexicon;
    char id[32];
    std::snprintf(id, sizeof(id), "%s%05zu", id_prefix.c_str(), i);
    opts.sample_id = id;
    msb::Sample s = msb::generate_pair(refs[i], tmpl, gw, cfg.generator, opts);
    if (s.failed) ++n_failed;
    out.samples.push_back(std::move(s));
  }
  msb::write_pool(out, out_path);
  if (audit_n > 0 && !audit_out.empty())
    write_text(audit_out, msb::emit_audit_sheet(out.samples, audit_n, cfg.seed));
  std::printf("generated %zu samples (%zu failed)\n", out.samples.size(),
              n_failed);
  return 0;
}

int cmd_augment_text(const CommonFlags& f, const std::string& pool_path,
                     const std::string& technique_name,
                     const std::string& out_path) {
  msb::EngineConfig cfg = resolve_config(f);
  const msb::TextTechnique technique =
      msb::text_technique_from_string(technique_name);
  msb::ModelGateway gw(cfg.cache_dir, cfg.cache_mode);
  msb::Pool pool = msb::read_pool(pool_path);
  msb::Pool out;
  out.provenance["stage"] = "augment";
  out.provenance["technique"] = msb::to_string(technique);
  std::size_t n_failed = 0;
  for (const auto& s : pool.samples) {
    if (s.failed) continue;
    msb::AugmentTextOptions opts;
    opts.variant_id = s.id + "." + msb::to_string(technique);
    opts.jailbreak_template = cfg.jailbreak_template;
    msb::Sample v = msb::augment_text(s, technique, gw, cfg.generator, opts);
    if (v.failed) ++n_failed;
    out.samples.push_back(std::move(v));
  }
  msb::write_pool(out, out_path);
  std::printf("augmented %zu samples (%zu failed)\n", out.samples.size(),
              n_failed);
  return 0;
}

int cmd_augment_image(const std::string& in_path, const std::string& op_name,
                      const std::string& out_path,
                      const msb::MutationParams& params, std::uint64_t seed) {
  const msb::MutationOp op = msb::mutation_op_from_string(op_name);
  msb::Image img = msb::read_image(in_path);
  msb::Image mutated = msb::mutate(img, op, params, seed);
  msb::write_png(mutated, out_path);
  std::printf("%s: %zux%zu -> %zux%zu\n", msb::to_string(op).c_str(),
              img.width, img.height, mutated.width, mutated.height);
  return 0;
}

int cmd_judge(const CommonFlags& f, const std::string& pool_path,
              const std::string& emb_path, const std::string& out_path) {
  msb::EngineConfig cfg = resolve_config(f);
  msb::ModelGateway gw(cfg.cache_dir, cfg.cache_mode);
  msb::Pool pool = msb::read_pool(pool_path, emb_path);
  msb::JudgeRunResult res =
      msb::judge_pool(pool, cfg.targets, cfg.judges, gw,
                      cfg.binarization_threshold, cfg.min_judges);
  msb::write_scores(res.scores, out_path);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  std::printf("judged %zu samples, excluded %zu\n", res.scores.size(),
              res.excluded_ids.size());
  return 0;
}

int cmd_select(const CommonFlags& f, const std::string& pool_path,
               const std::string& emb_path, const std::string& scores_path,
               const std::string& out_path, const std::string& weights_csv,
               std::size_t n_max) {
  msb::EngineConfig cfg = resolve_config(f);
  if (!weights_csv.empty()) cfg.weights = parse_weights(weights_csv);
  if (n_max > 0) cfg.n_max = n_max;
  msb::Pool pool = msb::read_pool(pool_path, emb_path);
  std::vector<msb::SampleScores> scores = msb::read_scores(scores_path);
  msb::SamplePool scored =
      msb::build_scored_pool(pool, scores, cfg.taxonomy.categories);
  msb::Benchmark b = msb::select(scored, cfg.weights, cfg.n_max,
                                 cfg.taxonomy.categories.size(),
                                 select_options(cfg, pool));
  msb::write_manifest(b, out_path);
  std::printf("selected %zu of %zu; manifest %s\n", b.entries.size(),
              scored.size(), b.manifest_hash.c_str());
  return 0;
}

int cmd_update(const CommonFlags& f, const std::string& manifest_path,
               const std::string& pool_path, const std::string& emb_path,
               const std::string& scores_path, const std::string& cand_path,
               const std::string& cand_emb, const std::string& cand_scores_path,
               double fraction, const std::string& out_path) {
  msb::EngineConfig cfg = resolve_config(f);
  msb::Benchmark b = msb::read_manifest(manifest_path);
  msb::Pool pool = msb::read_pool(pool_path, emb_path);
  msb::SamplePool store = msb::build_scored_pool(
      pool, msb::read_scores(scores_path), cfg.taxonomy.categories);
  msb::Pool cand = msb::read_pool(cand_path, cand_emb);
  msb::SamplePool candidates = msb::build_scored_pool(
      cand, msb::read_scores(cand_scores_path), cfg.taxonomy.categories);
  msb::SelectOptions opts = select_options(cfg, cand);
  msb::Benchmark next =
      msb::update_benchmark(b, store, candidates, fraction, opts);
  msb::write_manifest(next, out_path);
  std::printf("updated: %zu entries; manifest %s (parent %s)\n",
              next.entries.size(), next.manifest_hash.c_str(),
              next.parent_manifest_hash.c_str());
  return 0;
}

int cmd_evaluate(const CommonFlags& f, const std::string& manifest_path,
                 const std::string& pool_path, const std::string& emb_path,
                 const std::string& ledger_dir, const std::string& out_path) {
  msb::EngineConfig cfg = resolve_config(f);
  msb::ModelGateway gw(cfg.cache_dir, cfg.cache_mode);
  msb::Benchmark b = msb::read_manifest(manifest_path);
  msb::Pool pool = msb::read_pool(pool_path, emb_path);
  json results;
  results["benchmark_hash"] = b.manifest_hash;
  results["models"] = json::array();
  for (const auto& target : cfg.targets) {
    const std::string ledger_path =
        ledger_dir + "/" + target.model_name + ".jsonl";
    msb::ResponseLedger ledger =
        msb::run_model(b, pool, target, gw, ledger_path);
    msb::AsrResult r =
        msb::asr(ledger, pool, cfg.judges, gw, cfg.binarization_threshold);
    json m;
    m["model"] = target.model_name;
    m["asr"] = r.overall;
    m["judged"] = r.judged;
    m["failed"] = r.failed;
    m["excluded"] = r.excluded;
    m["per_category"] = r.per_category;
    results["models"].push_back(std::move(m));
    std::printf("%s: ASR %.4f over %zu judged\n", target.model_name.c_str(),
                r.overall, r.judged);
  }
  write_text(out_path, results.dump(2) + "\n");
  return 0;
}

int cmd_report(const CommonFlags& f, const std::string& manifest_path,
               const std::string& results_path, const std::string& out_path) {
  msb::EngineConfig cfg = resolve_config(f);
  msb::Benchmark b = msb::read_manifest(manifest_path);
  json results;
  {
    std::ifstream in(results_path);
    if (!in)
      throw msb::DataError("cannot open " + results_path +
                           "; run `msbench evaluate` first");
    in >> results;
  }
  std::vector<msb::ModelReport> reports;
  std::vector<double> asrs;
  for (const auto& m : results.at("models")) {
    msb::ModelReport r;
    r.model_id = m.at("model").get<std::string>();
    r.asr.overall = m.at("asr").get<double>();
    r.asr.judged = m.at("judged").get<std::size_t>();
    for (const auto& [cat, v] : m.at("per_category").items())
      r.asr.per_category[cat] = v.get<double>();
    r.sr = 1.0 - r.asr.overall;
    asrs.push_back(r.asr.overall);
    reports.push_back(std::move(r));
  }
  std::ostringstream out;
  out << msb::render_leaderboard(msb::rank_leaderboard(reports),
                                 cfg.taxonomy.categories);
  const msb::QualityMetrics q = msb::quality_metrics(b, asrs);
  char line[160];
  std::snprintf(line, sizeof(line), "MEAN %.4f  MAD %s  GAP %s  DIV %.4f\n",
                q.mean,
                q.mad ? std::to_string(*q.mad).c_str() : "-",
                q.gap ? std::to_string(*q.gap).c_str() : "-", q.div);
  out << line;
  if (out_path.empty()) std::cout << out.str();
  else write_text(out_path, out.str());
  return 0;
}

int cmd_sweep(const CommonFlags& f, const std::string& pool_path,
              const std::string& emb_path, const std::string& scores_path,
              const std::string& varied, const std::string& grid_csv,
              std::size_t n_max, const std::string& out_path) {
  msb::EngineConfig cfg = resolve_config(f);
  if (n_max > 0) cfg.n_max = n_max;
  msb::Pool pool = msb::read_pool(pool_path, emb_path);
  std::vector<msb::SampleScores> scores = msb::read_scores(scores_path);
  msb::SamplePool scored =
      msb::build_scored_pool(pool, scores, cfg.taxonomy.categories);
  const std::size_t k = cfg.taxonomy.categories.size();
  std::vector<msb::SweepPoint> points;
  if (varied == "n_max") {
    std::vector<std::size_t> sizes;
    std::stringstream ss(grid_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) sizes.push_back(std::stoul(tok));
    points = msb::sweep_sizes(scored, scores, cfg.weights, sizes, k);
  } else {
    std::vector<double> grid;
    std::stringstream ss(grid_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    points = msb::sweep_weights(scored, scores, varied, grid, cfg.n_max, k);
  }
  std::vector<std::string> model_ids;
  if (!scores.empty()) model_ids = scores.front().matrix.model_ids;
  const std::string table = msb::render_sweep(points, model_ids);
  if (out_path.empty()) std::cout << table;
  else write_text(out_path, table);
  return 0;
}

int cmd_verify_replay(const std::string& dir, bool generate_corpus) {
  if (generate_corpus) msb::write_fixture_corpus(dir);
  const std::string hash = msb::verify_replay(dir);
  std::printf("%s\n", hash.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal safety-benchmark construction engine"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* pre = app.add_subcommand("preprocess",
                                 "Filter, dedup and categorize a raw pool");
  std::string pool_path, emb_path, out_path, out_emb, rejects_path,
      quarantine_path;
  add_common(pre, &flags);
  pre->add_option("--pool", pool_path, "Input records (jsonl)")->required();
  pre->add_option("--emb", emb_path, "Embedding sidecar");
  pre->add_option("--out", out_path, "Output records")->required();
  pre->add_option("--out-emb", out_emb, "Output embedding sidecar");
  pre->add_option("--rejects", rejects_path, "Rejection log");
  pre->add_option("--quarantine", quarantine_path, "Uncategorized samples");

  auto* gen = app.add_subcommand("generate",
                                 "Synthesize image-question pairs");
  std::string images_path, strategy_name = "dependence", id_prefix = "gen";
  std::size_t audit_n = 0;
  std::string audit_out;
  add_common(gen, &flags);
  gen->add_option("--images", images_path, "File of image refs, one per line")
      ->required();
  gen->add_option("--strategy", strategy_name,
                  "dependence | complementarity | conflict");
  gen->add_option("--out", out_path, "Output records")->required();
  gen->add_option("--id-prefix", id_prefix, "Sample id prefix");
  gen->add_option("--audit", audit_n, "Samples per strategy for review sheet");
  gen->add_option("--audit-out", audit_out, "Review sheet path");

  auto* aug = app.add_subcommand("augment",
                                 "Rewrite questions or mutate images");
  std::string technique_name, image_in, image_op, image_out, overlay_text;
  msb::MutationParams mparams;
  std::uint64_t image_seed = 0;
  add_common(aug, &flags, /*config_required=*/false);
  aug->add_option("--pool", pool_path, "Input records (text mode)");
  aug->add_option("--technique", technique_name,
                  "roleplay | contextual | synonym | paraphrase | jailbreak");
  aug->add_option("--out", out_path, "Output records (text mode)");
  aug->add_option("--image", image_in, "Input image (image mode)");
  aug->add_option("--op", image_op,
                  "crop | gaussian_blur | gaussian_noise | flip | rotate | "
                  "overlay_text | overlay_object");
  aug->add_option("--out-image", image_out, "Output PNG (image mode)");
  aug->add_option("--crop-fraction", mparams.crop_fraction, "Retained area");
  aug->add_option("--blur-sigma", mparams.blur_sigma, "Gaussian blur sigma");
  aug->add_option("--noise-sigma", mparams.noise_sigma, "Noise sigma");
  aug->add_flag("--flip-vertical", mparams.flip_vertical, "Vertical flip");
  aug->add_option("--rotate-degrees", mparams.rotate_degrees, "90, 180, 270");
  aug->add_option("--overlay-area", mparams.overlay_area_fraction,
                  "Overlay area fraction");
  aug->add_option("--overlay-text", mparams.overlay_text, "Overlay string");
  aug->add_option("--image-seed", image_seed, "Mutation seed");

  auto* jud = app.add_subcommand("judge", "Score a pool with the judge fleet");
  add_common(jud, &flags);
  jud->add_option("--pool", pool_path, "Input records")->required();
  jud->add_option("--emb", emb_path, "Embedding sidecar");
  jud->add_option("--out", out_path, "Per-sample scores")->required();

  auto* sel = app.add_subcommand("select", "Greedy benchmark selection");
  std::string scores_path, weights_csv;
  std::size_t n_max = 0;
  add_common(sel, &flags);
  sel->add_option("--pool", pool_path, "Input records")->required();
  sel->add_option("--emb", emb_path, "Embedding sidecar")->required();
  sel->add_option("--scores", scores_path, "Judged scores")->required();
  sel->add_option("--out", out_path, "Benchmark manifest")->required();
  sel->add_option("--weights", weights_csv, "alpha,beta,gamma");
  sel->add_option("--n-max", n_max, "Benchmark size");

  auto* upd = app.add_subcommand("update",
                                 "Replace the worst fraction of a benchmark");
  std::string manifest_path, cand_path, cand_emb, cand_scores_path;
  double fraction = 0.2;
  add_common(upd, &flags);
  upd->add_option("--manifest", manifest_path, "Current manifest")->required();
  upd->add_option("--pool", pool_path, "Store records")->required();
  upd->add_option("--emb", emb_path, "Store embedding sidecar")->required();
  upd->add_option("--scores", scores_path, "Store scores")->required();
  upd->add_option("--candidates", cand_path, "Candidate records")->required();
  upd->add_option("--candidates-emb", cand_emb, "Candidate sidecar")
      ->required();
  upd->add_option("--candidates-scores", cand_scores_path, "Candidate scores")
      ->required();
  upd->add_option("--fraction", fraction, "Replacement fraction (0, 1]");
  upd->add_option("--out", out_path, "New manifest")->required();

  auto* eva = app.add_subcommand("evaluate",
                                 "Run the target fleet over a benchmark");
  std::string ledger_dir = ".", results_path = "results.json";
  add_common(eva, &flags);
  eva->add_option("--manifest", manifest_path, "Benchmark manifest")
      ->required();
  eva->add_option("--pool", pool_path, "Pool records")->required();
  eva->add_option("--emb", emb_path, "Embedding sidecar");
  eva->add_option("--ledger-dir", ledger_dir, "Per-model response ledgers");
  eva->add_option("--out", results_path, "Results JSON");

  auto* rep = app.add_subcommand("report", "Leaderboard and fleet metrics");
  add_common(rep, &flags);
  rep->add_option("--manifest", manifest_path, "Benchmark manifest")
      ->required();
  rep->add_option("--results", results_path, "Results JSON from evaluate")
      ->required();
  rep->add_option("--out", out_path, "Write report here instead of stdout");

  auto* swp = app.add_subcommand("sweep", "Weight or size ablation");
  std::string varied = "gamma", grid_csv;
  add_common(swp, &flags);
  swp->add_option("--pool", pool_path, "Pool records")->required();
  swp->add_option("--emb", emb_path, "Embedding sidecar")->required();
  swp->add_option("--scores", scores_path, "Judged scores")->required();
  swp->add_option("--vary", varied, "alpha | beta | gamma | n_max");
  swp->add_option("--grid", grid_csv, "Comma-separated grid values")
      ->required();
  swp->add_option("--n-max", n_max, "Benchmark size (weight sweeps)");
  swp->add_option("--out", out_path, "Write table here instead of stdout");

  auto* ver = app.add_subcommand(
      "verify-replay", "Offline determinism check over a fixture corpus");
  std::string fixture_dir;
  bool generate_corpus = false;
  ver->add_option("--dir", fixture_dir, "Fixture corpus directory")
      ->required();
  ver->add_flag("--generate-corpus", generate_corpus,
                "Regenerate the corpus deterministically first");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pre->parsed())
      return cmd_preprocess(flags, pool_path, emb_path, out_path, out_emb,
                            rejects_path, quarantine_path);
    if (gen->parsed())
      return cmd_generate(flags, images_path, strategy_name, out_path,
                          id_prefix, audit_n, audit_out);
    if (aug->parsed()) {
      if (!image_in.empty())
        return cmd_augment_image(image_in, image_op, image_out, mparams,
                                 image_seed);
      if (pool_path.empty() || technique_name.empty() || out_path.empty())
        throw msb::ConfigError(
            "augment needs either --image/--op/--out-image or "
            "--pool/--technique/--out");
      return cmd_augment_text(flags, pool_path, technique_name, out_path);
    }
    if (jud->parsed()) return cmd_judge(flags, pool_path, emb_path, out_path);
    if (sel->parsed())
      return cmd_select(flags, pool_path, emb_path, scores_path, out_path,
                        weights_csv, n_max);
    if (upd->parsed())
      return cmd_update(flags, manifest_path, pool_path, emb_path, scores_path,
                        cand_path, cand_emb, cand_scores_path, fraction,
                        out_path);
    if (eva->parsed())
      return cmd_evaluate(flags, manifest_path, pool_path, emb_path,
                          ledger_dir, results_path);
    if (rep->parsed())
      return cmd_report(flags, manifest_path, results_path, out_path);
    if (swp->parsed())
      return cmd_sweep(flags, pool_path, emb_path, scores_path, varied,
                       grid_csv, n_max, out_path);
    if (ver->parsed()) return cmd_verify_replay(fixture_dir, generate_corpus);
  } catch (const msb::GatewayError& e) {
    std::cerr << "gateway error: " << e.what() << "\n";
    return 3;
  } catch (const msb::CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return 3;
  } catch (const msb::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 4;
  } catch (const msb::JudgeParseError& e) {
    std::cerr << "judge parse error: " << e.what() << "\n";
    return 4;
  } catch (const msb::Error& e) {
    // Config, validation, domain and capacity errors.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
