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
#include <string>
#include <string_view>

#include "wordseg/corpus.hpp"

namespace wordseg {

/// Distribution over single-character phonemes. Characters outside the
/// support are not merely improbable: querying them is an error.
class PhonemeDist {
 public:
  PhonemeDist() = default;

  /// Normalizes nonnegative per-character weights. Throws on an empty
  /// support or a weight on a non-phoneme character.
  static PhonemeDist from_weights(const std::array<double, 128>& weights);

  bool contains(char c) const noexcept {
    const auto i = static_cast<unsigned char>(c);
    return i < 128 && prob_[i] > 0.0;
  }
  /// 0 outside the support.
  double prob(char c) const noexcept {
    const auto i = static_cast<unsigned char>(c);
    return i < 128 ? prob_[i] : 0.0;
  }
  double log_prob(char c) const noexcept { return log_prob_[static_cast<unsigned char>(c) & 0x7f]; }

  /// Support in ascending character order.
  std::string alphabet() const;
  bool empty() const noexcept { return support_ == 0; }

  bool operator==(const PhonemeDist& other) const { return prob_ == other.prob_; }

 private:
  std::array<double, 128> prob_{};
  std::array<double, 128> log_prob_{};
  std::size_t support_ = 0;
};

/// P(x) = occurrences of x / total phonemes. Depends only on the phoneme
/// strings, never on the gold boundaries.
PhonemeDist empirical_phoneme_dist(const Corpus& corpus);

PhonemeDist uniform_phoneme_dist(std::string_view alphabet);

}  // namespace wordseg
