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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordseg/corpus.hpp"
#include "wordseg/eval.hpp"
#include "wordseg/generator.hpp"
#include "wordseg/sampler.hpp"

namespace wordseg {

enum class InitMode { random, gold, none };

std::string_view to_string(InitMode mode);
InitMode parse_init_mode(std::string_view name);

/// Everything one experiment needs. Paths are local files only.
struct RunConfig {
  ModelKind model = ModelKind::unigram;
  std::filesystem::path corpus_path;
  std::size_t slice = 0;  // first N utterances; 0 keeps all
  double alpha0 = 20.0;
  double alpha1 = 100.0;
  double p_hash = 0.5;
  double rho = 2.0;
  std::string phoneme_dist = "empirical";  // or "uniform"
  AnnealSchedule schedule;
  std::uint64_t seed = 0;
  Aggregate aggregate = Aggregate::final;
  InitMode init = InitMode::random;
  double p_init = 0.5;
  Seating seating = Seating::tables;
  std::size_t vocab_size = 0;
  double boost = 1.0;
  std::uint64_t vocab_seed = 0;
  std::filesystem::path out_dir;  // empty: write nothing
  bool record_trace = true;

  void validate() const;
  /// Flat JSON echo of every field, enough to reproduce the run.
  std::string to_json() const;
};

/// Reads the corpus and applies the slice.
Corpus load_corpus(const RunConfig& cfg);
ModelParams make_params(const RunConfig& cfg, const Corpus& corpus);
SegState make_init(const RunConfig& cfg, const Corpus& corpus);

struct RunResult {
  SegState prediction;
  SamplerOutput sampler;
  std::optional<EvalReport> report;  // when the corpus has gold
};

/// Runs the sampler from `init` and scores the aggregated segmentation.
/// With no collected samples the final state is the prediction.
RunResult run_segmentation(const Corpus& corpus, const RunConfig& cfg, const SegState& init,
                           const std::optional<VocabPrior>& vocab = std::nullopt);

/// Writes segmentation.txt, report.tsv, report.json, trace.csv and
/// manifest.json under cfg.out_dir (no-op when it is empty).
void write_outputs(const Corpus& corpus, const RunConfig& cfg, const RunResult& result,
                   const std::string& command, const std::string& extra_manifest = "{}");

RunResult cmd_segment(const RunConfig& cfg);

/// Grid over "alpha0", "alpha1" and/or "p_hash".
using Grid = std::map<std::string, std::vector<double>>;

struct SweepRow {
  std::map<std::string, double> point;
  std::uint64_t seed = 0;
  std::optional<EvalReport> report;
  std::string error;  // set when the run failed
};

/// One run per grid point and seed on a pool of at most `workers` threads.
/// A failed run is recorded in its row and the sweep carries on. Throws
/// std::invalid_argument for an empty grid or an unknown parameter.
std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, const Grid& grid,
                                const std::vector<std::uint64_t>& seeds, std::size_t workers);
std::string sweep_tsv(const std::vector<SweepRow>& rows);

/// Gold initialization with k random toggles, then sampling.
RunResult cmd_perturb(const RunConfig& cfg, std::size_t k);

/// Builds a vocabulary prior from cfg.vocab_size / boost / vocab_seed and samples with it.
RunResult cmd_vocab(const RunConfig& cfg);

/// Writes the generated corpus in line format to `path`.
GenResult cmd_generate(const GenConfig& gen, ModelKind model, const std::filesystem::path& path);

struct OracleRow {
  std::size_t position;
  double exact;
  double gibbs;
};

struct OracleResult {
  std::vector<OracleRow> rows;
  double max_abs_dev = 0.0;
};

/// Exact marginals beside Gibbs estimates from a run at gamma = 1.
OracleResult cmd_oracle(const RunConfig& cfg);
std::string oracle_tsv(const OracleResult& result);

/// Corpus statistics as JSON.
std::string cmd_stats(const RunConfig& cfg);

}  // namespace wordseg
