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

#include "wordseg/eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string_view>

#include "json.hpp"

namespace wordseg {

namespace {

Scores make_scores(std::size_t correct, std::size_t predicted, std::size_t gold) {
  Scores s;
  s.correct = correct;
  s.predicted = predicted;
  s.gold = gold;
  s.p = predicted == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(predicted);
  s.r = gold == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(gold);
  s.f = f0(s.p, s.r);
  return s;
}

std::set<std::string_view> types_of(const Corpus& corpus, const SegState& state) {
  std::set<std::string_view> types;
  for_each_token(corpus, state, [&](std::size_t, std::string_view w, bool) { types.insert(w); });
  return types;
}

}  // namespace

double f0(double p, double r) {
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

Scores token_scores(const Corpus& corpus, const SegState& pred) {
  const SegState& gold = corpus.gold();
  check_matches(corpus, pred);
  std::size_t correct = 0, predicted = 0, gold_tokens = 0;
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    const std::size_t base = corpus.offset(u);
    const std::size_t inner = corpus.utterance(u).size() - 1;
    // walk both segmentations; a token matches when it starts at a shared
    // boundary and ends at the next boundary of both
    bool aligned = true;  // both have a boundary right before this phoneme
    for (std::size_t j = 0; j <= inner; ++j) {
      const bool pb = j == inner || pred.boundaries[base + j];
      const bool gb = j == inner || gold.boundaries[base + j];
      if (pb) ++predicted;
      if (gb) ++gold_tokens;
      if (pb && gb && aligned) ++correct;
      if (pb || gb) aligned = pb && gb;
    }
  }
  return make_scores(correct, predicted, gold_tokens);
}

Scores boundary_scores(const Corpus& corpus, const SegState& pred) {
  const SegState& gold = corpus.gold();
  check_matches(corpus, pred);
  std::size_t correct = 0, predicted = 0, gold_b = 0;
  for (std::size_t i = 0; i < pred.boundaries.size(); ++i) {
    predicted += pred.boundaries[i];
    gold_b += gold.boundaries[i];
    correct += pred.boundaries[i] & gold.boundaries[i];
  }
  return make_scores(correct, predicted, gold_b);
}

Scores lexicon_scores(const Corpus& corpus, const SegState& pred) {
  check_matches(corpus, pred);
  const auto p = types_of(corpus, pred);
  const auto g = types_of(corpus, corpus.gold());
  std::size_t correct = 0;
  for (auto w : p) correct += g.count(w);
  return make_scores(correct, p.size(), g.size());
}

double mean_word_length(const Corpus& corpus, const SegState& state) {
  const std::size_t n = token_count(corpus, state);
  return n == 0 ? 0.0 : static_cast<double>(corpus.phoneme_count()) / static_cast<double>(n);
}

std::vector<std::pair<std::string, std::size_t>> top_k_words(const Corpus& corpus,
                                                             const SegState& state,
                                                             std::size_t k) {
  std::map<std::string_view, std::size_t> counts;
  for_each_token(corpus, state, [&](std::size_t, std::string_view w, bool) { ++counts[w]; });
  std::vector<std::pair<std::string, std::size_t>> out;
  out.reserve(counts.size());
  for (const auto& [w, c] : counts) out.emplace_back(std::string(w), c);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > k) out.resize(k);
  return out;
}

const std::vector<std::string>& EvalReport::keys() {
  static const std::vector<std::string> k{"P",  "R",  "F",  "BP",           "BR",          "BF",
                                          "LP", "LR", "LF", "mean_pred_len", "mean_gold_len"};
  return k;
}

std::vector<double> EvalReport::values() const {
  return {token.p,   token.r,   token.f,   boundary.p,    boundary.r,   boundary.f,
          lexicon.p, lexicon.r, lexicon.f, mean_pred_len, mean_gold_len};
}

std::string EvalReport::tsv_header() const {
  std::string s;
  for (const auto& k : keys()) s += (s.empty() ? "" : "\t") + k;
  return s;
}

std::string EvalReport::tsv_row() const {
  std::string s;
  for (double v : values()) {
    if (!s.empty()) s += '\t';
    s += nlohmann::json(v).dump();
  }
  return s;
}

std::string EvalReport::json() const {
  nlohmann::ordered_json j;
  const auto v = values();
  for (std::size_t i = 0; i < v.size(); ++i) j[keys()[i]] = v[i];
  return j.dump(2);
}

EvalReport evaluate(const Corpus& corpus, const SegState& pred) {
  EvalReport r;
  r.token = token_scores(corpus, pred);
  r.boundary = boundary_scores(corpus, pred);
  r.lexicon = lexicon_scores(corpus, pred);
  r.mean_pred_len = mean_word_length(corpus, pred);
  r.mean_gold_len = mean_word_length(corpus, corpus.gold());
  return r;
}

}  // namespace wordseg
