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
#include <string>
#include <utility>
#include <vector>

#include "wordseg/corpus.hpp"

namespace wordseg {

/// Harmonic mean 2pr/(p+r), 0 when p + r = 0.
double f0(double p, double r);

struct Scores {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

/// A predicted token counts when the same span is a gold token.
Scores token_scores(const Corpus& corpus, const SegState& pred);
/// Over utterance-internal positions only.
Scores boundary_scores(const Corpus& corpus, const SegState& pred);
/// Predicted word types against gold word types of the same corpus.
Scores lexicon_scores(const Corpus& corpus, const SegState& pred);

/// Phonemes per token.
double mean_word_length(const Corpus& corpus, const SegState& state);

/// Most frequent words, count descending, ties in byte order.
std::vector<std::pair<std::string, std::size_t>> top_k_words(const Corpus& corpus,
                                                             const SegState& state,
                                                             std::size_t k);

struct EvalReport {
  Scores token;
  Scores boundary;
  Scores lexicon;
  double mean_pred_len = 0.0;
  double mean_gold_len = 0.0;

  static const std::vector<std::string>& keys();
  std::vector<double> values() const;
  std::string tsv_header() const;
  std::string tsv_row() const;
  /// Flat JSON object with the keys of keys().
  std::string json() const;
};

/// Scores `pred` against the corpus's gold segmentation. Throws
/// std::logic_error without gold, std::invalid_argument on a length mismatch.
EvalReport evaluate(const Corpus& corpus, const SegState& pred);

}  // namespace wordseg
