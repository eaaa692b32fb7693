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

#include "wordseg/model.hpp"

#include <cmath>
#include <limits>

namespace wordseg {

void ModelParams::validate() const {
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) throw std::invalid_argument("alpha0 must be >= 0");
  if (!(alpha1 >= 0.0) || !std::isfinite(alpha1)) throw std::invalid_argument("alpha1 must be >= 0");
  if (!(p_hash > 0.0 && p_hash < 1.0)) throw std::invalid_argument("p_hash must lie in (0, 1)");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be > 0");
  if (phonemes.empty()) throw std::invalid_argument("phoneme distribution is empty");
}

double log_p0(std::string_view word, const ModelParams& params) {
  if (word.empty()) throw std::invalid_argument("P0 of an empty word");
  double lp = std::log(params.p_hash) +
              static_cast<double>(word.size() - 1) * std::log1p(-params.p_hash);
  for (char c : word) {
    if (!params.phonemes.contains(c)) {
      throw std::invalid_argument(std::string("phoneme '") + c + "' outside the distribution's support");
    }
    lp += params.phonemes.log_prob(c);
  }
  return lp;
}

double p0(std::string_view word, const ModelParams& params) {
  return std::exp(log_p0(word, params));
}

double log_rising(double a, std::int64_t n) {
  if (n <= 0) return 0.0;
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  if (n < 32) {
    double s = 0.0;
    for (std::int64_t k = 0; k < n; ++k) s += std::log(a + static_cast<double>(k));
    return s;
  }
  return std::lgamma(a + static_cast<double>(n)) - std::lgamma(a);
}

double log_rising_log(double log_a, std::int64_t n) {
  if (n <= 0) return 0.0;
  const double a = std::exp(log_a);
  return log_a + log_rising(a + 1.0, n - 1);
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

double log_crp_numerator(std::int64_t count, double log_scaled_base) {
  if (count == 0) return log_scaled_base;
  return log_add(std::log(static_cast<double>(count)), log_scaled_base);
}

double HypothesisWeights::w_h1() const { return std::exp(log_h1); }
double HypothesisWeights::w_h2() const { return std::exp(log_h2); }

double HypothesisWeights::prob_h1() const {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (log_h1 == ninf && log_h2 == ninf) {
    throw DegeneratePrior("both segmentation hypotheses have zero probability");
  }
  if (log_h2 == ninf) return 1.0;
  if (log_h1 == ninf) return 0.0;
  return 1.0 / (1.0 + std::exp(log_h2 - log_h1));
}

}  // namespace wordseg
