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
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "wordseg/corpus.hpp"
#include "wordseg/model.hpp"

namespace wordseg {

struct GenConfig {
  ModelParams params;
  std::size_t n_utterances = 100;
  /// Fixed utterance-end probability; when empty it is drawn once from
  /// Beta(rho/2, rho/2). Unigram generator only.
  std::optional<double> p_dollar = 0.3;
  std::uint64_t seed = 0;
  /// A bigram utterance longer than this aborts generation.
  std::size_t max_words = 100000;

  void validate() const;
};

/// The generator's own record of what it drew. "" stands for the
/// utterance boundary in bigram pairs.
struct GenResult {
  Corpus corpus;
  std::map<std::string, std::int64_t> word_counts;
  std::int64_t tokens = 0;
  std::int64_t final_tokens = 0;
  double p_dollar = 0.0;
  // bigram generator only
  std::map<std::pair<std::string, std::string>, std::int64_t> pair_counts;
  std::map<std::pair<std::string, std::string>, std::int64_t> pair_tables;
  std::map<std::string, std::int64_t> word_tables;
  std::int64_t tables = 0;
};

/// Forward simulation of the unigram Dirichlet-process model.
GenResult gen_unigram(const GenConfig& cfg);

/// Forward simulation of the hierarchical bigram model with an explicit
/// seating arrangement. An utterance that would end before its first word
/// is redrawn, so every utterance is non-empty.
GenResult gen_bigram(const GenConfig& cfg);

}  // namespace wordseg
