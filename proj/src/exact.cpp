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

#include "wordseg/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wordseg/bigram.hpp"
#include "wordseg/unigram.hpp"

namespace wordseg {

SegState ExactPosterior::configuration(std::uint32_t mask) const {
  SegState s;
  s.boundaries.resize(positions);
  for (std::size_t p = 0; p < positions; ++p) s.boundaries[p] = (mask >> p) & 1u;
  return s;
}

std::vector<double> ExactPosterior::marginals() const {
  std::vector<double> m(positions, 0.0);
  for (std::size_t mask = 0; mask < probs.size(); ++mask) {
    for (std::size_t p = 0; p < positions; ++p) {
      if ((mask >> p) & 1u) m[p] += probs[mask];
    }
  }
  return m;
}

ExactPosterior exact_posterior(const Corpus& corpus, const ModelParams& params, ModelKind model) {
  const std::size_t b = corpus.internal_positions();
  if (b > kMaxExactPositions) {
    throw std::invalid_argument("exact enumeration refused: " + std::to_string(b) +
                                " internal positions (limit " +
                                std::to_string(kMaxExactPositions) + ")");
  }
  ExactPosterior post;
  post.positions = b;
  post.probs.resize(std::size_t{1} << b);
  std::vector<double> logs(post.probs.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < logs.size(); ++mask) {
    const SegState s = post.configuration(mask);
    logs[mask] = model == ModelKind::unigram ? log_joint_unigram(corpus, s, params)
                                             : log_joint_bigram(corpus, s, params);
    top = std::max(top, logs[mask]);
  }
  if (!std::isfinite(top)) throw DegeneratePrior("every configuration has zero probability");
  double z = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) z += post.probs[i] = std::exp(logs[i] - top);
  for (double& p : post.probs) p /= z;
  return post;
}

}  // namespace wordseg
