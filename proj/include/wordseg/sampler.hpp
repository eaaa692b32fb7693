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
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wordseg/bigram.hpp"
#include "wordseg/corpus.hpp"
#include "wordseg/model.hpp"

namespace wordseg {

enum class ModelKind { unigram, bigram };
enum class Aggregate { final, marginal };

std::string_view to_string(ModelKind kind);
std::string_view to_string(Aggregate mode);
/// Throw std::invalid_argument on unknown names.
ModelKind parse_model_kind(std::string_view name);
Aggregate parse_aggregate(std::string_view name);

/// Temperature schedule. Burn-in is split into gamma_steps equal plateaus
/// whose temperatures fall geometrically from gamma_max to 1; gamma is 1
/// from burn_in on.
struct AnnealSchedule {
  std::size_t burn_in = 1000;
  std::size_t total_sampling = 10000;
  std::size_t sample_every = 10;
  double gamma_max = 10.0;
  std::size_t gamma_steps = 10;

  void validate() const;
  double gamma(std::size_t iteration) const;
  std::size_t iterations() const noexcept { return burn_in + total_sampling; }
  /// Whether the sweep with this 0-based index is followed by a snapshot.
  bool collects(std::size_t iteration) const noexcept {
    return iteration >= burn_in && (iteration - burn_in + 1) % sample_every == 0;
  }
  /// total_sampling / sample_every, rounded down.
  std::size_t sample_count() const noexcept { return total_sampling / sample_every; }
};

/// Known words whose hypotheses get their weight multiplied by `boost`.
/// An infinite boost forces the single qualifying hypothesis, if any.
struct VocabPrior {
  std::set<std::string, std::less<>> words;
  double boost = 1.0;

  void validate() const;
  bool contains(std::string_view w) const { return words.find(w) != words.end(); }
};

struct SamplerOptions {
  ModelKind model = ModelKind::unigram;
  AnnealSchedule schedule;
  std::uint64_t seed = 0;
  std::optional<VocabPrior> vocab;
  Seating seating = Seating::tables;
  bool random_scan = false;   // visit sites in a fresh random order each sweep
  bool record_trace = true;
  bool keep_samples = true;   // store every snapshot, not just their tallies
  bool check_counts = false;  // rebuild and compare counts after every sweep
};

struct TracePoint {
  std::size_t iteration;
  double log_joint;
  std::size_t token_count;
  double gamma;
};

struct SamplerOutput {
  SegState final_state;
  std::vector<SegState> samples;
  /// Per-position fraction of collected snapshots with a boundary.
  std::vector<double> boundary_freq;
  std::size_t sample_count = 0;
  std::vector<TracePoint> trace;
  std::uint64_t seed = 0;
  ModelKind model = ModelKind::unigram;
  ModelParams params;
  AnnealSchedule schedule;
};

/// One Gibbs chain over a corpus. The corpus must outlive the chain.
class GibbsChain {
 public:
  GibbsChain(const Corpus& corpus, const ModelParams& params, SegState init,
             const SamplerOptions& options);
  ~GibbsChain();
  GibbsChain(GibbsChain&&) noexcept;
  GibbsChain& operator=(GibbsChain&&) noexcept;

  /// Resamples the internal position with flat index `position`.
  void resample_site(std::size_t position, double gamma);
  /// Visits every internal position once.
  void sweep(double gamma);

  const SegState& state() const noexcept;
  std::size_t token_count() const noexcept;
  /// Log joint of the model's current statistics.
  double log_joint() const;
  /// Throws InvariantError if the incremental counts differ from a rebuild.
  void check_counts();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Runs burn_in + total_sampling sweeps from `init`. Deterministic given
/// the inputs and options.seed.
SamplerOutput run(const Corpus& corpus, const ModelParams& params, const SegState& init,
                  const SamplerOptions& options);

/// `final`: the last sample. `marginal`: boundaries present in more than
/// half the samples. Throws std::invalid_argument on an empty list.
SegState aggregate(const std::vector<SegState>& samples, Aggregate mode);

/// Draws v distinct gold word types without replacement, each draw
/// proportional to gold token frequency among the types left.
VocabPrior build_vocab_prior(const Corpus& corpus, std::size_t v, double boost,
                             std::uint64_t seed);

}  // namespace wordseg
