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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wordseg/unigram.hpp"

namespace wordseg {

/// How customers of the bigram restaurants are seated.
///
/// `tables`: each restaurant keeps explicit table sizes and a new customer
/// opens a table with probability proportional to alpha1 * P1. The backoff
/// counts b_l then count tables, the joint over (words, seating) is
/// exchangeable, and Gibbs sampling targets the exact hierarchical posterior.
///
/// `types`: exactly one table per bigram type, so b_l is the number of
/// distinct bigram types ending in l. Cheaper, but the predictive is no
/// longer exchangeable and the sampler only approximates the posterior.
enum class Seating { tables, types };

/// Base-distribution mass of the utterance-boundary token; ordinary words
/// share the remaining 1 - kBoundaryBaseProb in proportion to P0.
inline constexpr double kBoundaryBaseProb = 0.5;

struct PairStats {
  std::int64_t customers = 0;
  std::vector<std::int32_t> tables;  // sizes, all >= 1
};

/// Sufficient statistics of the hierarchical bigram model. Contexts and
/// targets include the boundary token (kBoundary).
struct BigramCounts {
  std::unordered_map<std::uint64_t, PairStats> pairs;  // n_<l',l>, zero entries erased
  std::vector<std::int64_t> context;                   // n_l' = sum_l n_<l',l>
  std::vector<std::int64_t> word_tables;               // b_l
  std::int64_t tables = 0;                             // b = sum_l b_l
  UnigramCounts unigrams;                              // word tokens, boundary excluded

  static constexpr std::uint64_t key(WordId prev, WordId next) noexcept {
    return (static_cast<std::uint64_t>(prev) << 32) | next;
  }
  std::int64_t pair_count(WordId prev, WordId next) const;
  std::int64_t context_count(WordId prev) const {
    return prev < context.size() ? context[prev] : 0;
  }
  std::int64_t tables_of(WordId w) const { return w < word_tables.size() ? word_tables[w] : 0; }
  std::size_t bigram_types() const noexcept { return pairs.size(); }

  /// Equality of everything determined by the token sequence alone
  /// (pair, context and unigram counts).
  bool same_tokens(const BigramCounts& other) const;
  /// Full equality, seating included.
  bool operator==(const BigramCounts& other) const;
  /// Throws InvariantError unless table sizes, b_l and b agree.
  void check_seating() const;
};

class BigramModel {
 public:
  /// Hypothesis weights plus the per-seating-path weights they sum over.
  /// Path bits record, for every window customer but the last, whether it
  /// opened a new table (most significant bit = first customer).
  struct Scored {
    HypothesisWeights weights;
    std::array<double, 2> h1_paths;
    std::array<double, 4> h2_paths;
  };
  static constexpr bool kUsesContext = true;

  explicit BigramModel(ModelParams params, Seating seating = Seating::tables);

  const ModelParams& params() const noexcept { return params_; }
  Seating seating() const noexcept { return seating_; }
  const Lexicon& lexicon() const noexcept { return lexicon_; }
  const BigramCounts& counts() const noexcept { return counts_; }

  WordId intern(std::string_view word);
  /// log of the boundary-extended base distribution.
  double log_base(WordId w) const { return log_base_[w]; }

  /// Seats the tokens of `state` in corpus order.
  void reset(const Corpus& corpus, const SegState& state, Rng& rng);
  /// Counts of `state` from scratch with one table per bigram type.
  BigramCounts count_tokens(const Corpus& corpus, const SegState& state);

  /// P1(w) = (b_w + alpha0 P0'(w)) / (b + alpha0).
  double backoff(WordId w) const;
  /// (n_<prev,next> + alpha1 P1(next)) / (n_prev + alpha1).
  double transition(WordId prev, WordId next) const;

  void remove(const Window& win, bool boundary, Rng& rng);
  /// Window weights given counts with the window removed. Customers of a
  /// hypothesis are scored left to right, each seeing the ones before it;
  /// the counts are restored before returning.
  Scored score(const Window& win);
  static const HypothesisWeights& weights(const Scored& s) noexcept { return s.weights; }
  void insert(const Window& win, bool boundary, const Scored& scored, Rng& rng);

  /// log P(tokens, current seating).
  double log_joint() const;

 private:
  struct Customer {
    WordId prev;
    WordId next;
  };

  double log_backoff(WordId w) const;
  double log_transition(WordId prev, WordId next) const;
  bool sample_new_table(WordId prev, WordId next, Rng& rng) const;
  void add_customer(WordId prev, WordId next, bool new_table, Rng& rng);
  void remove_customer(WordId prev, WordId next, Rng& rng);
  void push_virtual(const Customer& c, bool new_table);
  void pop_virtual(const Customer& c, bool new_table);
  void enumerate(std::span<const Customer> seq, std::size_t i, double acc, unsigned path,
                 std::span<double> out);

  ModelParams params_;
  Seating seating_;
  Lexicon lexicon_;
  std::vector<double> log_base_;
  BigramCounts counts_;
  double log_alpha0_;
  double log_alpha1_;
};

/// Exact log-probability of the segmentation's token sequence under the
/// hierarchical model, summed over all seatings. Requires alpha0, alpha1 > 0.
double log_joint_bigram(const Corpus& corpus, const SegState& state, const ModelParams& params);

}  // namespace wordseg
