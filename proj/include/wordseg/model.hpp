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
#include <stdexcept>
#include <string>
#include <string_view>

#include "wordseg/phoneme_dist.hpp"

namespace wordseg {

/// Counts went negative or drifted from the segmentation they describe.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Both hypotheses at a site have zero prior mass (e.g. alpha0 = 0 with
/// only unseen words on offer).
class DegeneratePrior : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Fixed hyperparameters. alpha1 is used by the bigram model only.
struct ModelParams {
  double alpha0 = 20.0;
  double alpha1 = 100.0;
  double p_hash = 0.5;
  double rho = 2.0;
  PhonemeDist phonemes;

  /// Throws std::invalid_argument when a value is out of range.
  void validate() const;
};

/// log P0(word) = log p# + (M-1) log(1-p#) + sum_j log P(x_j).
/// Throws std::invalid_argument for an empty word or a phoneme outside the
/// distribution's support.
double log_p0(std::string_view word, const ModelParams& params);
double p0(std::string_view word, const ModelParams& params);

/// Dirichlet-process predictive (count + concentration * base) / (total + concentration).
/// Serves the unigram rule, the bigram transition and the bigram backoff.
inline double crp_predictive(double count, double total, double concentration,
                             double base_prob) {
  return (count + concentration * base_prob) / (total + concentration);
}

/// Beta-Bernoulli predictive that token i (1-based) is utterance-final,
/// given n_dollar final tokens among the i-1 before it.
inline double utterance_final_prob(std::int64_t n_dollar, std::int64_t i, double rho) {
  return (static_cast<double>(n_dollar) + rho / 2.0) / (static_cast<double>(i - 1) + rho);
}

/// log of the rising factorial a (a+1) ... (a+n-1); 0 for n == 0.
double log_rising(double a, std::int64_t n);
/// log_rising(exp(log_a), n), finite even when exp(log_a) underflows.
double log_rising_log(double log_a, std::int64_t n);

/// log sum(exp(a), exp(b)) tolerant of -inf operands.
double log_add(double a, double b);

/// log(count + exp(log_scaled_base)): the log numerator of crp_predictive
/// with log_scaled_base = log(concentration * base_prob).
double log_crp_numerator(std::int64_t count, double log_scaled_base);

/// Unnormalized log weights of "no boundary" (h1) and "boundary" (h2).
struct HypothesisWeights {
  double log_h1;
  double log_h2;

  double w_h1() const;
  double w_h2() const;
  /// Normalized probability of h1; throws DegeneratePrior if both are zero.
  double prob_h1() const;
};

}  // namespace wordseg
