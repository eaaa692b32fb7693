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

#include "wordseg/bigram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace wordseg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of alpha^t Gamma(alpha)/Gamma(alpha+n) prod_k Gamma(size_k): the CRP
// probability of one particular seating of n customers at t tables
double crp_log_seating(double alpha, std::int64_t n, std::int64_t t, double sum_lgamma_sizes) {
  if (n == 0) return 0.0;
  if (alpha == 0.0) {
    return t == 1 ? sum_lgamma_sizes - std::lgamma(static_cast<double>(n)) : kNegInf;
  }
  return static_cast<double>(t) * std::log(alpha) - log_rising(alpha, n) + sum_lgamma_sizes;
}

double sample_log_choice(std::span<const double> log_w, Rng& rng, std::size_t& index) {
  double total = kNegInf;
  for (double w : log_w) total = log_add(total, w);
  double r = rng.uniform();
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    if (log_w[i] == kNegInf) continue;
    index = i;
    r -= std::exp(log_w[i] - total);
    if (r < 0.0) break;
  }
  return total;
}

}  // namespace

std::int64_t BigramCounts::pair_count(WordId prev, WordId next) const {
  auto it = pairs.find(key(prev, next));
  return it == pairs.end() ? 0 : it->second.customers;
}

bool BigramCounts::same_tokens(const BigramCounts& other) const {
  if (pairs.size() != other.pairs.size() || !(unigrams == other.unigrams)) return false;
  for (const auto& [k, p] : pairs) {
    auto it = other.pairs.find(k);
    if (it == other.pairs.end() || it->second.customers != p.customers) return false;
  }
  const std::size_t len = std::max(context.size(), other.context.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (context_count(static_cast<WordId>(i)) != other.context_count(static_cast<WordId>(i))) {
      return false;
    }
  }
  return true;
}

bool BigramCounts::operator==(const BigramCounts& other) const {
  if (!same_tokens(other) || tables != other.tables) return false;
  for (const auto& [k, p] : pairs) {
    auto a = p.tables;
    auto b = other.pairs.at(k).tables;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  const std::size_t len = std::max(word_tables.size(), other.word_tables.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (tables_of(static_cast<WordId>(i)) != other.tables_of(static_cast<WordId>(i))) return false;
  }
  return true;
}

void BigramCounts::check_seating() const {
  std::vector<std::int64_t> per_word(word_tables.size(), 0);
  std::vector<std::int64_t> per_context(context.size(), 0);
  std::int64_t total = 0;
  for (const auto& [k, p] : pairs) {
    const auto prev = static_cast<WordId>(k >> 32);
    const auto next = static_cast<WordId>(k & 0xffffffffu);
    if (p.customers <= 0 || p.tables.empty() ||
        p.tables.size() > static_cast<std::size_t>(p.customers)) {
      throw InvariantError("bigram pair with inconsistent customers and tables");
    }
    std::int64_t seated = 0;
    for (auto s : p.tables) {
      if (s <= 0) throw InvariantError("empty bigram table");
      seated += s;
    }
    if (seated != p.customers) throw InvariantError("table sizes do not sum to customers");
    if (next >= per_word.size() || prev >= per_context.size()) {
      throw InvariantError("bigram id outside count vectors");
    }
    per_word[next] += static_cast<std::int64_t>(p.tables.size());
    per_context[prev] += p.customers;
    total += static_cast<std::int64_t>(p.tables.size());
  }
  if (total != tables) throw InvariantError("total table count drifted");
  for (std::size_t w = 0; w < per_word.size(); ++w) {
    if (per_word[w] != word_tables[w]) throw InvariantError("per-word table count drifted");
  }
  for (std::size_t c = 0; c < per_context.size(); ++c) {
    if (per_context[c] != context[c]) throw InvariantError("context count drifted");
  }
}

BigramModel::BigramModel(ModelParams params, Seating seating)
    : params_(std::move(params)),
      seating_(seating),
      log_base_{std::log(kBoundaryBaseProb)},
      log_alpha0_(std::log(params_.alpha0)),
      log_alpha1_(std::log(params_.alpha1)) {
  params_.validate();
  counts_.context.resize(1, 0);
  counts_.word_tables.resize(1, 0);
}

WordId BigramModel::intern(std::string_view word) {
  const WordId id = lexicon_.intern(word);
  if (id >= log_base_.size()) {
    log_base_.resize(id + 1, kNegInf);
    log_base_[id] = std::log1p(-kBoundaryBaseProb) + wordseg::log_p0(word, params_);
    counts_.context.resize(id + 1, 0);
    counts_.word_tables.resize(id + 1, 0);
  }
  return id;
}

double BigramModel::log_backoff(WordId w) const {
  return log_crp_numerator(counts_.word_tables[w], log_alpha0_ + log_base_[w]) -
         std::log(static_cast<double>(counts_.tables) + params_.alpha0);
}

double BigramModel::log_transition(WordId prev, WordId next) const {
  return log_crp_numerator(counts_.pair_count(prev, next), log_alpha1_ + log_backoff(next)) -
         std::log(static_cast<double>(counts_.context[prev]) + params_.alpha1);
}

double BigramModel::backoff(WordId w) const { return std::exp(log_backoff(w)); }

double BigramModel::transition(WordId prev, WordId next) const {
  return std::exp(log_transition(prev, next));
}

bool BigramModel::sample_new_table(WordId prev, WordId next, Rng& rng) const {
  const std::int64_t c = counts_.pair_count(prev, next);
  if (c == 0) return true;
  if (seating_ == Seating::types) return false;
  const double log_old = std::log(static_cast<double>(c));
  const double log_new = log_alpha1_ + log_backoff(next);
  return rng.uniform() < std::exp(log_new - log_add(log_old, log_new));
}

void BigramModel::add_customer(WordId prev, WordId next, bool new_table, Rng& rng) {
  PairStats& p = counts_.pairs[BigramCounts::key(prev, next)];
  if (new_table || p.tables.empty()) {
    p.tables.push_back(1);
    ++counts_.word_tables[next];
    ++counts_.tables;
  } else if (p.tables.size() == 1) {
    ++p.tables.front();
  } else {
    // join a table with probability proportional to its size
    auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.customers)));
    for (auto& s : p.tables) {
      if ((r -= s) < 0) {
        ++s;
        break;
      }
    }
  }
  ++p.customers;
  ++counts_.context[prev];
}

void BigramModel::remove_customer(WordId prev, WordId next, Rng& rng) {
  auto it = counts_.pairs.find(BigramCounts::key(prev, next));
  if (it == counts_.pairs.end() || it->second.customers <= 0 || counts_.context[prev] <= 0) {
    throw InvariantError("bigram count underflow while removing a token");
  }
  PairStats& p = it->second;
  // a uniformly chosen customer leaves, i.e. a table with probability
  // proportional to its size
  std::size_t t = 0;
  if (p.tables.size() > 1) {
    auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.customers)));
    while ((r -= p.tables[t]) >= 0) ++t;
  }
  if (--p.tables[t] == 0) {
    p.tables[t] = p.tables.back();
    p.tables.pop_back();
    --counts_.word_tables[next];
    --counts_.tables;
  }
  --counts_.context[prev];
  if (--p.customers == 0) counts_.pairs.erase(it);
}

void BigramModel::push_virtual(const Customer& c, bool new_table) {
  ++counts_.pairs[BigramCounts::key(c.prev, c.next)].customers;
  ++counts_.context[c.prev];
  if (new_table) {
    ++counts_.word_tables[c.next];
    ++counts_.tables;
  }
}

void BigramModel::pop_virtual(const Customer& c, bool new_table) {
  auto it = counts_.pairs.find(BigramCounts::key(c.prev, c.next));
  if (--it->second.customers == 0 && it->second.tables.empty()) counts_.pairs.erase(it);
  --counts_.context[c.prev];
  if (new_table) {
    --counts_.word_tables[c.next];
    --counts_.tables;
  }
}

void BigramModel::enumerate(std::span<const Customer> seq, std::size_t i, double acc,
                            unsigned path, std::span<double> out) {
  const Customer& c = seq[i];
  if (i + 1 == seq.size()) {
    out[path] = acc + log_transition(c.prev, c.next);
    return;
  }
  const std::int64_t n = counts_.pair_count(c.prev, c.next);
  const double log_den = std::log(static_cast<double>(counts_.context[c.prev]) + params_.alpha1);
  if (seating_ == Seating::types) {
    const bool fresh = n == 0;
    const double lp = log_transition(c.prev, c.next);
    push_virtual(c, fresh);
    enumerate(seq, i + 1, acc + lp, path * 2 + (fresh ? 1 : 0), out);
    pop_virtual(c, fresh);
    return;
  }
  if (n > 0) {
    const double lp = std::log(static_cast<double>(n)) - log_den;
    push_virtual(c, false);
    enumerate(seq, i + 1, acc + lp, path * 2, out);
    pop_virtual(c, false);
  }
  const double lp = log_alpha1_ + log_backoff(c.next) - log_den;
  push_virtual(c, true);
  enumerate(seq, i + 1, acc + lp, path * 2 + 1, out);
  pop_virtual(c, true);
}

void BigramModel::remove(const Window& win, bool boundary, Rng& rng) {
  if (boundary) {
    remove_customer(win.left, win.w2, rng);
    remove_customer(win.w2, win.w3, rng);
    remove_customer(win.w3, win.right, rng);
    counts_.unigrams.remove(win.w2, false);
    counts_.unigrams.remove(win.w3, win.final);
  } else {
    remove_customer(win.left, win.w1, rng);
    remove_customer(win.w1, win.right, rng);
    counts_.unigrams.remove(win.w1, win.final);
  }
}

BigramModel::Scored BigramModel::score(const Window& win) {
  Scored s;
  s.h1_paths.fill(kNegInf);
  s.h2_paths.fill(kNegInf);
  const std::array<Customer, 2> h1{{{win.left, win.w1}, {win.w1, win.right}}};
  const std::array<Customer, 3> h2{{{win.left, win.w2}, {win.w2, win.w3}, {win.w3, win.right}}};
  enumerate(h1, 0, 0.0, 0, s.h1_paths);
  enumerate(h2, 0, 0.0, 0, s.h2_paths);
  s.weights.log_h1 = kNegInf;
  s.weights.log_h2 = kNegInf;
  for (double w : s.h1_paths) s.weights.log_h1 = log_add(s.weights.log_h1, w);
  for (double w : s.h2_paths) s.weights.log_h2 = log_add(s.weights.log_h2, w);
  if (s.weights.log_h1 == kNegInf && s.weights.log_h2 == kNegInf) {
    throw DegeneratePrior("both bigram hypotheses have zero probability");
  }
  return s;
}

void BigramModel::insert(const Window& win, bool boundary, const Scored& scored, Rng& rng) {
  std::array<Customer, 3> seq{};
  std::size_t n = 0;
  std::span<const double> paths;
  if (boundary) {
    seq = {{{win.left, win.w2}, {win.w2, win.w3}, {win.w3, win.right}}};
    n = 3;
    paths = scored.h2_paths;
  } else {
    seq = {{{win.left, win.w1}, {win.w1, win.right}, {}}};
    n = 2;
    paths = scored.h1_paths;
  }
  std::size_t path = 0;
  if (seating_ == Seating::tables) sample_log_choice(paths, rng, path);

  for (std::size_t i = 0; i < n; ++i) {
    const Customer& c = seq[i];
    bool fresh;
    if (seating_ == Seating::types) {
      fresh = counts_.pair_count(c.prev, c.next) == 0;
    } else if (i + 1 < n) {
      fresh = (path >> (n - 2 - i)) & 1u;
    } else {
      fresh = sample_new_table(c.prev, c.next, rng);
    }
    add_customer(c.prev, c.next, fresh, rng);
  }
  if (boundary) {
    counts_.unigrams.add(win.w2, false);
    counts_.unigrams.add(win.w3, win.final);
  } else {
    counts_.unigrams.add(win.w1, win.final);
  }
}

void BigramModel::reset(const Corpus& corpus, const SegState& state, Rng& rng) {
  check_matches(corpus, state);
  counts_ = BigramCounts{};
  counts_.context.assign(lexicon_.size(), 0);
  counts_.word_tables.assign(lexicon_.size(), 0);
  WordId prev = kBoundary;
  for_each_token(corpus, state, [&](std::size_t, std::string_view w, bool final) {
    const WordId id = intern(w);
    add_customer(prev, id, sample_new_table(prev, id, rng), rng);
    counts_.unigrams.add(id, final);
    prev = id;
    if (final) {
      add_customer(prev, kBoundary, sample_new_table(prev, kBoundary, rng), rng);
      prev = kBoundary;
    }
  });
}

BigramCounts BigramModel::count_tokens(const Corpus& corpus, const SegState& state) {
  check_matches(corpus, state);
  BigramCounts c;
  auto add = [&](WordId prev, WordId next) {
    PairStats& p = c.pairs[BigramCounts::key(prev, next)];
    if (p.tables.empty()) {
      p.tables.push_back(0);
      if (next >= c.word_tables.size()) c.word_tables.resize(next + 1, 0);
      ++c.word_tables[next];
      ++c.tables;
    }
    ++p.tables.front();
    ++p.customers;
    if (prev >= c.context.size()) c.context.resize(prev + 1, 0);
    ++c.context[prev];
  };
  WordId prev = kBoundary;
  for_each_token(corpus, state, [&](std::size_t, std::string_view w, bool final) {
    const WordId id = intern(w);
    add(prev, id);
    c.unigrams.add(id, final);
    prev = id;
    if (final) {
      add(prev, kBoundary);
      prev = kBoundary;
    }
  });
  return c;
}

double BigramModel::log_joint() const {
  std::vector<std::int64_t> tables_in(counts_.context.size(), 0);
  std::vector<double> lgamma_sum(counts_.context.size(), 0.0);
  for (const auto& [k, p] : counts_.pairs) {
    const auto prev = static_cast<WordId>(k >> 32);
    tables_in[prev] += static_cast<std::int64_t>(p.tables.size());
    for (auto s : p.tables) lgamma_sum[prev] += std::lgamma(static_cast<double>(s));
  }
  double lp = 0.0;
  for (std::size_t c = 0; c < counts_.context.size(); ++c) {
    lp += crp_log_seating(params_.alpha1, counts_.context[c], tables_in[c], lgamma_sum[c]);
  }
  if (counts_.tables == 0) return lp;
  if (params_.alpha0 == 0.0) {
    std::size_t dishes = 0;
    double base = 0.0;
    for (std::size_t w = 0; w < counts_.word_tables.size(); ++w) {
      if (counts_.word_tables[w] > 0) {
        ++dishes;
        base = log_base_[w];
      }
    }
    return dishes == 1 ? lp + base : kNegInf;
  }
  for (std::size_t w = 0; w < counts_.word_tables.size(); ++w) {
    if (counts_.word_tables[w] > 0) {
      lp += log_rising_log(log_alpha0_ + log_base_[w], counts_.word_tables[w]);
    }
  }
  return lp - log_rising(params_.alpha0, counts_.tables);
}

double log_joint_bigram(const Corpus& corpus, const SegState& state, const ModelParams& params) {
  params.validate();
  if (!(params.alpha0 > 0.0 && params.alpha1 > 0.0)) {
    throw std::invalid_argument("exact bigram marginal requires alpha0 > 0 and alpha1 > 0");
  }
  check_matches(corpus, state);

  // token pairs keyed by spelling; "" is the boundary
  std::map<std::string_view, std::map<std::string_view, std::int64_t>> by_next;
  std::map<std::string_view, std::int64_t> contexts;
  std::int64_t max_count = 0;
  std::string_view prev;
  for_each_token(corpus, state, [&](std::size_t, std::string_view w, bool final) {
    max_count = std::max(max_count, ++by_next[w][prev]);
    ++contexts[prev];
    prev = w;
    if (final) {
      max_count = std::max(max_count, ++by_next[std::string_view()][prev]);
      ++contexts[prev];
      prev = std::string_view();
    }
  });

  // log |s(n, k)|, unsigned Stirling numbers of the first kind
  std::vector<std::vector<double>> log_stirling(static_cast<std::size_t>(max_count) + 1);
  log_stirling[0] = {0.0};
  for (std::size_t n = 1; n < log_stirling.size(); ++n) {
    log_stirling[n].assign(n + 1, kNegInf);
    for (std::size_t k = 1; k <= n; ++k) {
      const double stay = k < n ? std::log(static_cast<double>(n - 1)) + log_stirling[n - 1][k]
                                : kNegInf;
      log_stirling[n][k] = log_add(stay, log_stirling[n - 1][k - 1]);
    }
  }

  auto convolve = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, kNegInf);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == kNegInf) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = log_add(out[i + j], a[i] + b[j]);
    }
    return out;
  };

  const double log_alpha0 = std::log(params.alpha0);
  const double log_alpha1 = std::log(params.alpha1);
  std::vector<double> total{0.0};  // indexed by total table count
  for (const auto& [next, prevs] : by_next) {
    std::vector<double> per_word{0.0};  // indexed by tables serving `next`
    for (const auto& [p, n] : prevs) {
      std::vector<double> f(static_cast<std::size_t>(n) + 1, kNegInf);
      for (std::int64_t t = 1; t <= n; ++t) {
        f[static_cast<std::size_t>(t)] =
            log_stirling[static_cast<std::size_t>(n)][static_cast<std::size_t>(t)] +
            static_cast<double>(t) * log_alpha1;
      }
      per_word = convolve(per_word, f);
    }
    const double log_base = next.empty()
                                ? std::log(kBoundaryBaseProb)
                                : std::log1p(-kBoundaryBaseProb) + log_p0(next, params);
    for (std::size_t t = 0; t < per_word.size(); ++t) {
      per_word[t] += log_rising_log(log_alpha0 + log_base, static_cast<std::int64_t>(t));
    }
    total = convolve(total, per_word);
  }

  double lp = kNegInf;
  for (std::size_t t = 0; t < total.size(); ++t) {
    lp = log_add(lp, total[t] - log_rising(params.alpha0, static_cast<std::int64_t>(t)));
  }
  for (const auto& [p, n] : contexts) lp -= log_rising(params.alpha1, n);
  return lp;
}

}  // namespace wordseg
