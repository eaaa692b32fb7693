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
#include <vector>

#include "wordseg/corpus.hpp"
#include "wordseg/model.hpp"
#include "wordseg/sampler.hpp"

namespace wordseg {

inline constexpr std::size_t kMaxExactPositions = 16;

/// Posterior over all 2^B boundary configurations by brute force.
/// probs[mask] is the probability of the configuration whose position p
/// carries a boundary iff bit p of mask is set.
struct ExactPosterior {
  std::size_t positions = 0;
  std::vector<double> probs;

  SegState configuration(std::uint32_t mask) const;
  /// Per-position boundary probabilities.
  std::vector<double> marginals() const;
};

/// Throws std::invalid_argument when the corpus has more than
/// kMaxExactPositions internal positions.
ExactPosterior exact_posterior(const Corpus& corpus, const ModelParams& params, ModelKind model);

}  // namespace wordseg
