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

#include "wordseg/generator.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordseg/bigram.hpp"
#include "wordseg/lexicon.hpp"
#include "wordseg/rng.hpp"

namespace wordseg {

void GenConfig::validate() const {
  params.validate();
  if (n_utterances == 0) throw std::invalid_argument("n_utterances must be >= 1");
  if (p_dollar && !(*p_dollar > 0.0 && *p_dollar < 1.0)) {
    throw std::invalid_argument("p_dollar must lie in (0, 1)");
  }
  if (max_words == 0) throw std::invalid_argument("max_words must be >= 1");
}

namespace {

// Spells a fresh word: phonemes are drawn i.i.d. and the word stops after
// each one with probability p_hash.
class Speller {
 public:
  explicit Speller(const ModelParams& params) : p_hash_(params.p_hash) {
    alphabet_ = params.phonemes.alphabet();
    double acc = 0.0;
    for (char c : alphabet_) cumulative_.push_back(acc += params.phonemes.prob(c));
  }

  std::string spell(Rng& rng) const {
    std::string w;
    do {
      const double r = rng.uniform() * cumulative_.back();
      std::size_t i = 0;
      while (i + 1 < cumulative_.size() && r >= cumulative_[i]) ++i;
      w.push_back(alphabet_[i]);
    } while (!rng.bernoulli(p_hash_));
    return w;
  }

 private:
  double p_hash_;
  std::string alphabet_;
  std::vector<double> cumulative_;
};

Corpus build_corpus(const std::vector<std::vector<std::string>>& utts) {
  std::vector<std::string> lines;
  SegState gold;
  for (const auto& words : utts) {
    std::string line;
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (k > 0) gold.boundaries.push_back(1);
      gold.boundaries.insert(gold.boundaries.end(), words[k].size() - 1, 0);
      line += words[k];
    }
    lines.push_back(std::move(line));
  }
  return Corpus(std::move(lines), std::move(gold));
}

}  // namespace

GenResult gen_unigram(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const Speller speller(cfg.params);
  GenResult res;
  if (cfg.p_dollar) {
    res.p_dollar = *cfg.p_dollar;
  } else {
    std::gamma_distribution<double> g(cfg.params.rho / 2.0, 1.0);
    const double x = g(rng.engine());
    const double y = g(rng.engine());
    res.p_dollar = x / (x + y);
  }

  std::vector<std::string> drawn;  // every token so far, in order
  std::vector<std::vector<std::string>> utts(cfg.n_utterances);
  for (auto& utt : utts) {
    do {
      const double n = static_cast<double>(drawn.size());
      const bool fresh = drawn.empty() || rng.uniform() * (n + cfg.params.alpha0) < cfg.params.alpha0;
      std::string w = fresh ? speller.spell(rng) : drawn[rng.below(drawn.size())];
      drawn.push_back(w);
      ++res.word_counts[w];
      utt.push_back(std::move(w));
    } while (!rng.bernoulli(res.p_dollar));
    ++res.final_tokens;
  }
  res.tokens = static_cast<std::int64_t>(drawn.size());
  res.corpus = build_corpus(utts);
  return res;
}

GenResult gen_bigram(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const Speller speller(cfg.params);
  const double a0 = cfg.params.alpha0;
  const double a1 = cfg.params.alpha1;
  GenResult res;

  Lexicon lex;
  std::vector<std::vector<WordId>> context_draws;  // dish of every customer, per context
  std::vector<WordId> top_draws;                    // dish of every bigram table

  // Draws the next token after `prev`; returns the dish and whether it
  // opened a new table.
  auto draw = [&](WordId prev) -> std::pair<WordId, bool> {
    if (prev >= context_draws.size()) context_draws.resize(prev + 1);
    const auto& seen = context_draws[prev];
    const double n = static_cast<double>(seen.size());
    if (!seen.empty() && !(rng.uniform() * (n + a1) < a1)) {
      return {seen[rng.below(seen.size())], false};
    }
    const double b = static_cast<double>(top_draws.size());
    if (!top_draws.empty() && !(rng.uniform() * (b + a0) < a0)) {
      return {top_draws[rng.below(top_draws.size())], true};
    }
    if (rng.bernoulli(kBoundaryBaseProb)) return {kBoundary, true};
    return {lex.intern(speller.spell(rng)), true};
  };
  auto seat = [&](WordId prev, WordId next, bool new_table) {
    context_draws[prev].push_back(next);
    const std::pair<std::string, std::string> key{std::string(lex.word(prev)),
                                                  std::string(lex.word(next))};
    ++res.pair_counts[key];
    if (new_table) {
      top_draws.push_back(next);
      ++res.pair_tables[key];
      ++res.word_tables[key.second];
      ++res.tables;
    }
  };

  std::vector<std::vector<std::string>> utts(cfg.n_utterances);
  for (auto& utt : utts) {
    WordId prev = kBoundary;
    for (;;) {
      auto [next, new_table] = draw(prev);
      if (next == kBoundary && prev == kBoundary) continue;  // empty utterance: redraw
      seat(prev, next, new_table);
      if (next == kBoundary) break;
      if (utt.size() == cfg.max_words) {
        throw std::runtime_error("generated utterance exceeds max_words");
      }
      const std::string w(lex.word(next));
      ++res.word_counts[w];
      ++res.tokens;
      utt.push_back(w);
      prev = next;
    }
    ++res.final_tokens;
  }
  res.corpus = build_corpus(utts);
  return res;
}

}  // namespace wordseg
