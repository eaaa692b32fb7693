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

#include "wordseg/unigram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wordseg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

void UnigramCounts::add(WordId w, bool final) {
  if (w >= by_word.size()) by_word.resize(w + 1, 0);
  ++by_word[w];
  ++n;
  if (final) ++n_dollar;
}

void UnigramCounts::remove(WordId w, bool final) {
  if (count(w) <= 0 || n <= 0 || (final && n_dollar <= 0)) {
    throw InvariantError("unigram count underflow while removing a token");
  }
  --by_word[w];
  --n;
  if (final) --n_dollar;
}

std::size_t UnigramCounts::types() const {
  return static_cast<std::size_t>(
      std::count_if(by_word.begin(), by_word.end(), [](std::int64_t c) { return c > 0; }));
}

bool UnigramCounts::operator==(const UnigramCounts& other) const {
  if (n != other.n || n_dollar != other.n_dollar) return false;
  const std::size_t len = std::max(by_word.size(), other.by_word.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (count(static_cast<WordId>(i)) != other.count(static_cast<WordId>(i))) return false;
  }
  return true;
}

UnigramModel::UnigramModel(ModelParams params)
    : params_(std::move(params)), log_p0_{kNegInf}, log_alpha0_(std::log(params_.alpha0)) {
  params_.validate();
}

WordId UnigramModel::intern(std::string_view word) {
  const WordId id = lexicon_.intern(word);
  if (id >= log_p0_.size()) {
    log_p0_.resize(id + 1, kNegInf);
    log_p0_[id] = wordseg::log_p0(word, params_);
  }
  return id;
}

UnigramCounts UnigramModel::count_tokens(const Corpus& corpus, const SegState& state) {
  check_matches(corpus, state);
  UnigramCounts c;
  for_each_token(corpus, state, [&](std::size_t, std::string_view w, bool final) {
    c.add(intern(w), final);
  });
  return c;
}

void UnigramModel::reset(const Corpus& corpus, const SegState& state) {
  counts_ = count_tokens(corpus, state);
}

double UnigramModel::predictive(WordId w) const {
  return std::exp(log_word(w, 0, counts_.n));
}

// log (n_w + extra + alpha0 P0(w)) / (n + alpha0)
double UnigramModel::log_word(WordId w, std::int64_t extra, std::int64_t n) const {
  return log_crp_numerator(counts_.count(w) + extra, log_alpha0_ + log_p0_[w]) -
         std::log(static_cast<double>(n) + params_.alpha0);
}

void UnigramModel::remove(const Window& win, bool boundary, Rng&) {
  if (boundary) {
    counts_.remove(win.w2, false);
    counts_.remove(win.w3, win.final);
  } else {
    counts_.remove(win.w1, win.final);
  }
}

UnigramModel::Scored UnigramModel::score(const Window& win) const {
  const std::int64_t n = counts_.n;
  const double nd = static_cast<double>(counts_.n_dollar);
  const double nn = static_cast<double>(n);
  const double half_rho = params_.rho / 2.0;
  // tokens sharing w1's (and w3's) utterance-final status
  const double n_u = win.final ? nd : nn - nd;

  HypothesisWeights w;
  w.log_h1 = log_word(win.w1, 0, n) + std::log((n_u + half_rho) / (nn + params_.rho));

  const std::int64_t same = win.w2 == win.w3 ? 1 : 0;
  const double same_u = win.final ? 0.0 : 1.0;  // w2 is never final
  w.log_h2 = log_word(win.w2, 0, n) + std::log((nn - nd + half_rho) / (nn + params_.rho)) +
             log_word(win.w3, same, n + 1) +
             std::log((n_u + same_u + half_rho) / (nn + 1.0 + params_.rho));
  if (!(w.log_h1 > kNegInf) && !(w.log_h2 > kNegInf)) {
    throw DegeneratePrior("alpha0 = 0 and neither hypothesis reuses an existing word");
  }
  return w;
}

void UnigramModel::insert(const Window& win, bool boundary, const Scored&, Rng&) {
  if (boundary) {
    counts_.add(win.w2, false);
    counts_.add(win.w3, win.final);
  } else {
    counts_.add(win.w1, win.final);
  }
}

double UnigramModel::log_joint() const {
  const std::int64_t n = counts_.n;
  if (n == 0) return 0.0;
  double lp = 0.0;
  if (params_.alpha0 == 0.0) {
    // every token must share the first token's type
    if (counts_.types() != 1) return kNegInf;
    for (WordId w = 0; w < counts_.by_word.size(); ++w) {
      if (counts_.by_word[w] > 0) lp += log_p0_[w];
    }
  } else {
    for (WordId w = 0; w < counts_.by_word.size(); ++w) {
      const std::int64_t c = counts_.by_word[w];
      if (c > 0) lp += log_rising_log(log_alpha0_ + log_p0_[w], c);
    }
    lp -= log_rising(params_.alpha0, n);
  }
  const double half_rho = params_.rho / 2.0;
  lp += log_rising(half_rho, counts_.n_dollar) + log_rising(half_rho, n - counts_.n_dollar) -
        log_rising(params_.rho, n);
  return lp;
}

double log_joint_unigram(const Corpus& corpus, const SegState& state, const ModelParams& params) {
  UnigramModel model(params);
  model.reset(corpus, state);
  return model.log_joint();
}

}  // namespace wordseg
