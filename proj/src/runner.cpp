// Copyright 2026 The wordseg Authors.
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

#include "wordseg/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "wordseg/exact.hpp"
#include "wordseg/phoneme_dist.hpp"

namespace wordseg {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string_view to_string(InitMode mode) {
  switch (mode) {
    case InitMode::random: return "random";
    case InitMode::gold: return "gold";
    case InitMode::none: return "none";
  }
  return "random";
}

InitMode parse_init_mode(std::string_view name) {
  if (name == "random") return InitMode::random;
  if (name == "gold") return InitMode::gold;
  if (name == "none") return InitMode::none;
  throw std::invalid_argument("unknown init mode '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (phoneme_dist != "empirical" && phoneme_dist != "uniform") {
    throw std::invalid_argument("phoneme_dist must be 'empirical' or 'uniform'");
  }
  if (!(p_init >= 0.0 && p_init <= 1.0)) throw std::invalid_argument("p_init must lie in [0, 1]");
  if (!(boost >= 1.0)) throw std::invalid_argument("boost must be >= 1");
  schedule.validate();
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["model"] = to_string(model);
  j["corpus"] = corpus_path.string();
  j["slice"] = slice;
  j["alpha0"] = alpha0;
  j["alpha1"] = alpha1;
  j["p_hash"] = p_hash;
  j["rho"] = rho;
  j["phoneme_dist"] = phoneme_dist;
  j["burn_in"] = schedule.burn_in;
  j["iters"] = schedule.total_sampling;
  j["sample_every"] = schedule.sample_every;
  j["gamma_max"] = schedule.gamma_max;
  j["gamma_steps"] = schedule.gamma_steps;
  j["seed"] = seed;
  j["aggregate"] = to_string(aggregate);
  j["init"] = to_string(init);
  j["p_init"] = p_init;
  j["seating"] = seating == Seating::tables ? "tables" : "types";
  j["vocab_size"] = vocab_size;
  j["boost"] = std::isinf(boost) ? ordered_json("inf") : ordered_json(boost);
  j["vocab_seed"] = vocab_seed;
  j["out"] = out_dir.string();
  return j.dump(2);
}

Corpus load_corpus(const RunConfig& cfg) {
  if (cfg.corpus_path.empty()) throw std::invalid_argument("no corpus path given");
  Corpus c = read_corpus(cfg.corpus_path);
  return cfg.slice == 0 ? c : c.slice(cfg.slice);
}

ModelParams make_params(const RunConfig& cfg, const Corpus& corpus) {
  ModelParams p;
  p.alpha0 = cfg.alpha0;
  p.alpha1 = cfg.alpha1;
  p.p_hash = cfg.p_hash;
  p.rho = cfg.rho;
  if (cfg.phoneme_dist == "empirical") {
    p.phonemes = empirical_phoneme_dist(corpus);
  } else {
    p.phonemes = uniform_phoneme_dist(empirical_phoneme_dist(corpus).alphabet());
  }
  p.validate();
  return p;
}

SegState make_init(const RunConfig& cfg, const Corpus& corpus) {
  switch (cfg.init) {
    case InitMode::gold: return corpus.gold();
    case InitMode::none: return no_boundaries(corpus);
    case InitMode::random: break;
  }
  // offset the stream so the initial state and the chain draw independently
  return random_init(corpus, cfg.p_init, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
}

RunResult run_segmentation(const Corpus& corpus, const RunConfig& cfg, const SegState& init,
                           const std::optional<VocabPrior>& vocab) {
  cfg.validate();
  SamplerOptions opts;
  opts.model = cfg.model;
  opts.schedule = cfg.schedule;
  opts.seed = cfg.seed;
  opts.vocab = vocab;
  opts.seating = cfg.seating;
  opts.record_trace = cfg.record_trace;
  opts.keep_samples = cfg.aggregate == Aggregate::marginal;

  RunResult r;
  r.sampler = run(corpus, make_params(cfg, corpus), init, opts);
  if (cfg.aggregate == Aggregate::marginal && !r.sampler.samples.empty()) {
    r.prediction = aggregate(r.sampler.samples, Aggregate::marginal);
  } else {
    // the last collected sample is the final state unless sampling stopped
    // short of a collection point
    r.prediction = r.sampler.final_state;
  }
  if (corpus.has_gold()) r.report = evaluate(corpus, r.prediction);
  return r;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_outputs(const Corpus& corpus, const RunConfig& cfg, const RunResult& result,
                   const std::string& command, const std::string& extra_manifest) {
  if (cfg.out_dir.empty()) return;
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir / "segmentation.txt", render(corpus, result.prediction));
  if (result.report) {
    write_file(cfg.out_dir / "report.tsv",
               result.report->tsv_header() + "\n" + result.report->tsv_row() + "\n");
    write_file(cfg.out_dir / "report.json", result.report->json() + "\n");
  }
  std::ostringstream trace;
  trace.precision(17);
  trace << "iteration,log_joint,token_count,gamma\n";
  for (const auto& t : result.sampler.trace) {
    trace << t.iteration << ',' << t.log_joint << ',' << t.token_count << ',' << t.gamma << '\n';
  }
  write_file(cfg.out_dir / "trace.csv", trace.str());

  ordered_json m;
  m["command"] = command;
  m["config"] = ordered_json::parse(cfg.to_json());
  m["extra"] = ordered_json::parse(extra_manifest);
  m["utterances"] = corpus.size();
  m["internal_positions"] = corpus.internal_positions();
  m["samples_collected"] = result.sampler.sample_count;
  write_file(cfg.out_dir / "manifest.json", m.dump(2) + "\n");
}

RunResult cmd_segment(const RunConfig& cfg) {
  cfg.validate();
  const Corpus corpus = load_corpus(cfg);
  RunResult r = run_segmentation(corpus, cfg, make_init(cfg, corpus));
  write_outputs(corpus, cfg, r, "segment");
  return r;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, const Grid& grid,
                                const std::vector<std::uint64_t>& seeds, std::size_t workers) {
  cfg.validate();
  if (grid.empty()) throw std::invalid_argument("empty parameter grid");
  for (const auto& [name, values] : grid) {
    if (name != "alpha0" && name != "alpha1" && name != "p_hash") {
      throw std::invalid_argument("cannot sweep parameter '" + name + "'");
    }
    if (values.empty()) throw std::invalid_argument("no values for parameter '" + name + "'");
  }
  if (seeds.empty()) throw std::invalid_argument("no seeds given for the sweep");
  const Corpus corpus = load_corpus(cfg);

  // cartesian product, last parameter varying fastest, then seeds
  std::vector<SweepRow> rows;
  std::vector<std::map<std::string, double>> points{{}};
  for (const auto& [name, values] : grid) {
    std::vector<std::map<std::string, double>> next;
    for (const auto& p : points) {
      for (double v : values) {
        auto q = p;
        q[name] = v;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  for (const auto& p : points) {
    for (auto s : seeds) rows.push_back({p, s, std::nullopt, {}});
  }

  std::atomic<std::size_t> next_job{0};
  auto worker = [&] {
    for (std::size_t i; (i = next_job.fetch_add(1)) < rows.size();) {
      SweepRow& row = rows[i];
      RunConfig c = cfg;
      c.seed = row.seed;
      c.record_trace = false;
      for (const auto& [name, v] : row.point) {
        if (name == "alpha0") c.alpha0 = v;
        if (name == "alpha1") c.alpha1 = v;
        if (name == "p_hash") c.p_hash = v;
      }
      if (!cfg.out_dir.empty()) c.out_dir = cfg.out_dir / ("run" + std::to_string(i));
      try {
        RunResult r = run_segmentation(corpus, c, make_init(c, corpus));
        write_outputs(corpus, c, r, "sweep");
        row.report = r.report;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(workers, 1, rows.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    write_file(cfg.out_dir / "sweep.tsv", sweep_tsv(rows));
    write_file(cfg.out_dir / "manifest.json", cfg.to_json() + "\n");
  }
  return rows;
}

std::string sweep_tsv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  if (rows.empty()) return "";
  for (const auto& [name, v] : rows.front().point) out << name << '\t';
  out << "seed\t" << EvalReport{}.tsv_header() << "\terror\n";
  const std::size_t n_metrics = EvalReport::keys().size();
  for (const auto& row : rows) {
    for (const auto& [name, v] : row.point) out << nlohmann::json(v).dump() << '\t';
    out << row.seed << '\t';
    if (row.report) {
      out << row.report->tsv_row();
    } else {
      for (std::size_t i = 0; i < n_metrics; ++i) out << (i ? "\t" : "") << "nan";
    }
    out << '\t' << row.error << '\n';
  }
  return out.str();
}

RunResult cmd_perturb(const RunConfig& cfg, std::size_t k) {
  cfg.validate();
  const Corpus corpus = load_corpus(cfg);
  const SegState init = perturb_gold(corpus, k, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  RunResult r = run_segmentation(corpus, cfg, init);
  write_outputs(corpus, cfg, r, "perturb", "{\"k\": " + std::to_string(k) + "}");
  return r;
}

RunResult cmd_vocab(const RunConfig& cfg) {
  cfg.validate();
  const Corpus corpus = load_corpus(cfg);
  const VocabPrior prior = build_vocab_prior(corpus, cfg.vocab_size, cfg.boost, cfg.vocab_seed);
  RunResult r = run_segmentation(corpus, cfg, make_init(cfg, corpus), prior);
  ordered_json extra;
  extra["vocabulary"] = prior.words;
  write_outputs(corpus, cfg, r, "vocab", extra.dump());
  return r;
}

GenResult cmd_generate(const GenConfig& gen, ModelKind model, const fs::path& path) {
  GenResult res = model == ModelKind::unigram ? gen_unigram(gen) : gen_bigram(gen);
  if (!path.empty()) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file(path, render(res.corpus, res.corpus.gold()));
    ordered_json m;
    m["command"] = "generate";
    m["model"] = to_string(model);
    m["n_utterances"] = gen.n_utterances;
    m["alpha0"] = gen.params.alpha0;
    m["alpha1"] = gen.params.alpha1;
    m["p_hash"] = gen.params.p_hash;
    m["rho"] = gen.params.rho;
    m["p_dollar"] = gen.p_dollar ? ordered_json(*gen.p_dollar) : ordered_json("prior");
    m["p_dollar_used"] = res.p_dollar;
    m["alphabet"] = gen.params.phonemes.alphabet();
    m["seed"] = gen.seed;
    m["tokens"] = res.tokens;
    fs::path manifest = path;
    manifest += ".manifest.json";
    write_file(manifest, m.dump(2) + "\n");
  }
  return res;
}

OracleResult cmd_oracle(const RunConfig& cfg) {
  cfg.validate();
  const Corpus corpus = load_corpus(cfg);
  const ModelParams params = make_params(cfg, corpus);
  const ExactPosterior post = exact_posterior(corpus, params, cfg.model);
  const auto exact = post.marginals();

  RunConfig c = cfg;
  c.record_trace = false;
  const RunResult r = run_segmentation(corpus, c, make_init(c, corpus));

  OracleResult out;
  for (std::size_t p = 0; p < exact.size(); ++p) {
    const double g = r.sampler.boundary_freq[p];
    out.rows.push_back({p, exact[p], g});
    out.max_abs_dev = std::max(out.max_abs_dev, std::abs(exact[p] - g));
  }
  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    write_file(cfg.out_dir / "oracle.tsv", oracle_tsv(out));
    write_file(cfg.out_dir / "manifest.json", cfg.to_json() + "\n");
  }
  return out;
}

std::string oracle_tsv(const OracleResult& result) {
  std::ostringstream out;
  out.precision(10);
  out << "position\texact\tgibbs\tabs_dev\n";
  for (const auto& row : result.rows) {
    out << row.position << '\t' << row.exact << '\t' << row.gibbs << '\t'
        << std::abs(row.exact - row.gibbs) << '\n';
  }
  out << "# max_abs_dev\t" << result.max_abs_dev << '\n';
  return out.str();
}

std::string cmd_stats(const RunConfig& cfg) {
  const Corpus corpus = load_corpus(cfg);
  ordered_json j;
  j["utterances"] = corpus.size();
  j["phonemes"] = corpus.phoneme_count();
  j["internal_positions"] = corpus.internal_positions();
  if (corpus.has_gold()) {
    const CorpusStats s = corpus_stats(corpus);
    j["words"] = s.words;
    j["words_per_utterance"] = s.words_per_utterance;
    j["phonemes_per_word"] = s.phonemes_per_word;
    ordered_json top = ordered_json::array();
    for (const auto& [w, c] : top_k_words(corpus, corpus.gold(), 20)) top.push_back({w, c});
    j["top_words"] = top;
  }
  const PhonemeDist dist = empirical_phoneme_dist(corpus);
  ordered_json pd;
  for (char c : dist.alphabet()) pd[std::string(1, c)] = dist.prob(c);
  j["phoneme_dist"] = pd;
  return j.dump(2);
}

}  // namespace wordseg
