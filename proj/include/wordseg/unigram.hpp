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

#include <cstdint>
#include <string_view>
#include <vector>

#include "wordseg/corpus.hpp"
#include "wordseg/lexicon.hpp"
#include "wordseg/model.hpp"
#include "wordseg/rng.hpp"

namespace wordseg {

/// The words around one boundary site: w1 spans the site, w2 w3 is its
/// split. left/right are the neighbouring tokens (kBoundary at utterance
/// edges); only the bigram model reads them. `final` is set when w1, and so
/// w3, ends its utterance.
struct Window {
  WordId w1;
  WordId w2;
  WordId w3;
  WordId left = kBoundary;
  WordId right = kBoundary;
  bool final = false;
};

/// Token statistics: n, n_l and n_$ (utterance-final tokens).
struct UnigramCounts {
  std::int64_t n = 0;
  std::int64_t n_dollar = 0;
  std::vector<std::int64_t> by_word;

  std::int64_t count(WordId w) const { return w < by_word.size() ? by_word[w] : 0; }
  void add(WordId w, bool final);
  /// Throws InvariantError if a count would go negative.
  void remove(WordId w, bool final);
  std::size_t types() const;

  /// Field-wise equality; trailing zero entries of by_word are ignored.
  bool operator==(const UnigramCounts& other) const;
};

/// Dirichlet-process unigram model with a Beta-Bernoulli utterance-end term.
/// Owns the lexicon and a per-word cache of log P0.
class UnigramModel {
 public:
  using Scored = HypothesisWeights;
  static constexpr bool kUsesContext = false;

  explicit UnigramModel(ModelParams params);

  const ModelParams& params() const noexcept { return params_; }
  const Lexicon& lexicon() const noexcept { return lexicon_; }
  const UnigramCounts& counts() const noexcept { return counts_; }

  WordId intern(std::string_view word);
  double log_p0(WordId w) const { return log_p0_[w]; }

  /// Replaces the counts with those of `state`.
  void reset(const Corpus& corpus, const SegState& state);
  /// Counts of `state` computed from scratch, leaving the model untouched
  /// apart from interning.
  UnigramCounts count_tokens(const Corpus& corpus, const SegState& state);

  /// (n_w + alpha0 P0(w)) / (n + alpha0) under the current counts.
  double predictive(WordId w) const;

  /// Takes the window's current words out of the counts.
  void remove(const Window& win, bool boundary, Rng& rng);
  /// Weights of h1 (w1) and h2 (w2 w3) given counts with the window removed.
  Scored score(const Window& win) const;
  static const HypothesisWeights& weights(const Scored& s) noexcept { return s; }
  void insert(const Window& win, bool boundary, const Scored& scored, Rng& rng);

  /// log P(tokens, utterance-final flags) under the current counts.
  double log_joint() const;

 private:
  double log_word(WordId w, std::int64_t extra, std::int64_t n) const;

  ModelParams params_;
  Lexicon lexicon_;
  std::vector<double> log_p0_;
  UnigramCounts counts_;
  double log_alpha0_;
};

/// Exact joint log-probability of a segmentation under the unigram model.
double log_joint_unigram(const Corpus& corpus, const SegState& state, const ModelParams& params);

}  // namespace wordseg
