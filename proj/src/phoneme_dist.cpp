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

#include "wordseg/phoneme_dist.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wordseg {

PhonemeDist PhonemeDist::from_weights(const std::array<double, 128>& weights) {
  double total = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (!(weights[c] >= 0.0) || !std::isfinite(weights[c])) {
      throw std::invalid_argument("phoneme weights must be finite and nonnegative");
    }
    if (weights[c] > 0.0 && !is_phoneme(static_cast<char>(c))) {
      throw std::invalid_argument("weight on a non-phoneme character");
    }
    total += weights[c];
  }
  if (total <= 0.0) throw std::invalid_argument("phoneme distribution has empty support");

  PhonemeDist d;
  d.log_prob_.fill(-std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (weights[c] > 0.0) {
      d.prob_[c] = weights[c] / total;
      d.log_prob_[c] = std::log(d.prob_[c]);
      ++d.support_;
    }
  }
  return d;
}

std::string PhonemeDist::alphabet() const {
  std::string out;
  for (std::size_t c = 0; c < prob_.size(); ++c) {
    if (prob_[c] > 0.0) out.push_back(static_cast<char>(c));
  }
  return out;
}

PhonemeDist empirical_phoneme_dist(const Corpus& corpus) {
  if (corpus.empty()) throw std::invalid_argument("empirical distribution of an empty corpus");
  std::array<double, 128> counts{};
  for (const auto& u : corpus.utterances()) {
    for (char c : u) counts[static_cast<unsigned char>(c)] += 1.0;
  }
  return PhonemeDist::from_weights(counts);
}

PhonemeDist uniform_phoneme_dist(std::string_view alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("uniform distribution over empty alphabet");
  std::array<double, 128> w{};
  for (char c : alphabet) {
    if (!is_phoneme(c)) throw std::invalid_argument("alphabet contains a non-phoneme character");
    w[static_cast<unsigned char>(c)] = 1.0;
  }
  return PhonemeDist::from_weights(w);
}

}  // namespace wordseg
