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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"
#include "wordseg/bigram.hpp"
#include "wordseg/rng.hpp"

using namespace wordseg;

namespace {

ModelParams params_a(double alpha0 = 20.0, double alpha1 = 100.0) {
  ModelParams p;
  p.alpha0 = alpha0;
  p.alpha1 = alpha1;
  p.phonemes = uniform_phoneme_dist("a");
  return p;
}

std::vector<std::vector<std::string>> words_of(const Corpus& c, const SegState& s) {
  std::vector<std::vector<std::string>> out(c.size());
  for_each_token(c, s, [&](std::size_t u, std::string_view w, bool) {
    out[u].emplace_back(w);
  });
  return out;
}

oracle::Dist dist_of(const ModelParams& p) {
  oracle::Dist d;
  for (char c : p.phonemes.alphabet()) d[c] = p.phonemes.prob(c);
  return d;
}

// Window around internal position `site` of state `s` (no boundary there).
Window window_at(BigramModel& m, const Corpus& c, const SegState& s, std::size_t site) {
  std::size_t u = 0;
  while (c.offset(u + 1) <= site) ++u;
  const std::size_t j = site - c.offset(u);
  const auto spans = token_spans(c, s, u);
  const std::string_view utt = c.utterance(u);
  std::size_t k = 0;
  while (!(spans[k].begin <= j && j < spans[k].end)) ++k;
  const Span sp = spans[k];
  Window win{m.intern(utt.substr(sp.begin, sp.size())),
             m.intern(utt.substr(sp.begin, j + 1 - sp.begin)),
             m.intern(utt.substr(j + 1, sp.end - j - 1))};
  win.final = k + 1 == spans.size();
  if (k > 0) win.left = m.intern(utt.substr(spans[k - 1].begin, spans[k - 1].size()));
  if (!win.final) win.right = m.intern(utt.substr(spans[k + 1].begin, spans[k + 1].size()));
  return win;
}

}  // namespace

TEST_SUITE("bigram") {

TEST_CASE("backoff and transition formulas") {
  CHECK(crp_predictive(2, 5, 3000.0, 1e-4) == doctest::Approx(2.3 / 3005.0));
  CHECK(crp_predictive(2, 5, 3000.0, 1e-4) == doctest::Approx(7.654e-4).epsilon(1e-3));
  CHECK(crp_predictive(3, 10, 100.0, 0.01) == doctest::Approx(4.0 / 110.0));
  CHECK(crp_predictive(3, 10, 100.0, 0.01) == doctest::Approx(0.03636).epsilon(1e-3));
}

TEST_CASE("empty counts back off fully") {
  BigramModel m(test::params_ab());
  const WordId ab = m.intern("ab");
  const double base = 0.5 * p0("ab", test::params_ab());
  CHECK(m.backoff(ab) == doctest::Approx(base));
  CHECK(m.backoff(kBoundary) == doctest::Approx(kBoundaryBaseProb));
  CHECK(m.transition(kBoundary, ab) == doctest::Approx(base));
  CHECK(m.transition(ab, ab) == doctest::Approx(m.backoff(ab)));
}

TEST_CASE("backoff and transition normalize") {
  const Corpus c = test::fixture().slice(30);
  ModelParams p;
  p.phonemes = empirical_phoneme_dist(c);
  for (Seating seating : {Seating::tables, Seating::types}) {
    BigramModel m(p, seating);
    Rng rng(3);
    m.reset(c, c.gold(), rng);
    const auto& k = m.counts();
    double p1_seen = 0.0, base_seen = 0.0;
    for (WordId w = 0; w < m.lexicon().size(); ++w) {
      p1_seen += m.backoff(w);
      base_seen += std::exp(m.log_base(w));
    }
    const double b = static_cast<double>(k.tables);
    CHECK(std::abs(p1_seen + p.alpha0 * (1.0 - base_seen) / (b + p.alpha0) - 1.0) < 1e-12);

    for (WordId prev : {kBoundary, *m.lexicon().find("yu")}) {
      double seen = 0.0;
      for (WordId w = 0; w < m.lexicon().size(); ++w) seen += m.transition(prev, w);
      const double np = static_cast<double>(k.context_count(prev));
      CHECK(std::abs(seen + p.alpha1 * (1.0 - p1_seen) / (np + p.alpha1) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("statistics invariants after seating a corpus") {
  const Corpus c = test::fixture().slice(40);
  ModelParams p;
  p.phonemes = empirical_phoneme_dist(c);
  BigramModel m(p);
  Rng rng(9);
  m.reset(c, random_init(c, 0.4, 2), rng);
  const auto& k = m.counts();
  CHECK_NOTHROW(k.check_seating());
  std::int64_t b = 0, pairs = 0;
  for (auto t : k.word_tables) b += t;
  for (const auto& [key, ps] : k.pairs) pairs += ps.customers;
  CHECK(b == k.tables);
  // one customer per token plus one per utterance end
  CHECK(pairs == k.unigrams.n + static_cast<std::int64_t>(c.size()));
  CHECK(k.unigrams.n_dollar == static_cast<std::int64_t>(c.size()));

  // with one table per type, b counts distinct bigram types
  BigramModel t(p, Seating::types);
  t.reset(c, random_init(c, 0.4, 2), rng);
  CHECK(t.counts().tables == static_cast<std::int64_t>(t.counts().bigram_types()));
  CHECK(t.counts() == t.count_tokens(c, random_init(c, 0.4, 2)));
}

TEST_CASE("exact bigram marginal matches brute-force seating enumeration") {
  const Corpus c = parse_corpus("ab ab\na ab\nb b");
  for (double a0 : {1.0, 20.0}) {
    for (double a1 : {0.5, 100.0}) {
      ModelParams p = test::params_ab(a0);
      p.alpha1 = a1;
      for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const SegState s = seed == 0 ? c.gold() : random_init(c, 0.3, seed);
        const auto customers = oracle::pairs_of(words_of(c, s));
        if (customers.size() > 10) continue;
        const double ref = oracle::bigram_marginal(customers, a0, a1, 0.5, dist_of(p));
        CHECK(log_joint_bigram(c, s, p) == doctest::Approx(std::log(ref)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("bigram log joint of a single-token utterance") {
  const ModelParams p = params_a();
  const Corpus c = parse_corpus("a");
  const double base = 0.5 * 0.5;  // boundary share times P0("a")
  const double end = p.alpha0 * kBoundaryBaseProb / (1.0 + p.alpha0);
  CHECK(log_joint_bigram(c, c.gold(), p) == doctest::Approx(std::log(base * end)));
}

TEST_CASE("identical token sequences have identical log joints") {
  const ModelParams p = test::params_ab(5.0);
  const Corpus a = parse_corpus("ab a\nb");
  const Corpus b({"aba", "b"}, SegState{{0, 1}});
  CHECK(log_joint_bigram(a, a.gold(), p) == log_joint_bigram(b, b.gold(), p));
  CHECK_THROWS_AS(log_joint_bigram(a, a.gold(), test::params_ab(0.0)), std::invalid_argument);
}

TEST_CASE("seating joint of a single-table-per-pair state equals the marginal") {
  const Corpus c = parse_corpus("ab ba\nb a ab");
  const ModelParams p = test::params_ab(4.0);
  BigramModel m(p);
  Rng rng(1);
  m.reset(c, c.gold(), rng);
  CHECK(m.log_joint() == doctest::Approx(log_joint_bigram(c, c.gold(), p)).epsilon(1e-12));
}

TEST_CASE("window weights with a repeated word") {
  // "aa": h1 is one word, h2 is "a a" whose middle customer sees the first
  const ModelParams p = params_a();
  const Corpus c = parse_corpus("aa");
  const double w_h1 = 0.125 * (20.0 * 0.5 / 21.0);
  const double w_h2 = 0.25 * (6.0 / 21.0) * (100.0 * (10.0 / 22.0) / 101.0);
  for (Seating seating : {Seating::tables, Seating::types}) {
    BigramModel m(p, seating);
    Rng rng(0);
    m.reset(c, no_boundaries(c), rng);
    Window win{m.intern("aa"), m.intern("a"), m.intern("a")};
    win.final = true;
    m.remove(win, false, rng);
    const auto s = m.score(win);
    CHECK(s.weights.w_h1() == doctest::Approx(w_h1).epsilon(1e-12));
    CHECK(s.weights.w_h2() == doctest::Approx(w_h2).epsilon(1e-12));
    // scoring leaves the counts untouched
    CHECK(m.counts().tables == 0);
    CHECK(m.counts().pairs.empty());
  }
}

TEST_CASE("window weights equal exact conditional probabilities") {
  const Corpus c = parse_corpus("ab ba a\nbab a\naab b");
  const ModelParams p = test::params_ab(3.0);
  Rng rng(4);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60 && checked < 12; ++seed) {
    SegState s = random_init(c, 0.5, seed);
    const std::size_t site = rng.below(c.internal_positions());
    s.boundaries[site] = 0;
    SegState s2 = s;
    s2.boundaries[site] = 1;

    BigramModel m(p);
    m.reset(c, s, rng);
    const Window win = window_at(m, c, s, site);
    m.remove(win, false, rng);
    // the conditional is only seating-free when every remaining pair is unique
    bool unique = true;
    for (const auto& [key, ps] : m.counts().pairs) unique &= ps.customers == 1;
    if (!unique) continue;
    ++checked;

    // remaining customers: all of s minus the window's
    auto all1 = oracle::pairs_of(words_of(c, s));
    auto all2 = oracle::pairs_of(words_of(c, s2));
    const std::string l(m.lexicon().word(win.left)), r(m.lexicon().word(win.right));
    const std::string w1(m.lexicon().word(win.w1));
    std::vector<oracle::Pair> rest = all1;
    for (const oracle::Pair& x : {oracle::Pair{l, w1}, oracle::Pair{w1, r}}) {
      rest.erase(std::find(rest.begin(), rest.end(), x));
    }
    const auto d = dist_of(p);
    const double pr = oracle::bigram_marginal(rest, 3.0, 100.0, 0.5, d);
    const double p1 = oracle::bigram_marginal(all1, 3.0, 100.0, 0.5, d);
    const double p2 = oracle::bigram_marginal(all2, 3.0, 100.0, 0.5, d);
    const auto sc = m.score(win);
    CHECK(sc.weights.w_h1() == doctest::Approx(p1 / pr).epsilon(1e-10));
    CHECK(sc.weights.w_h2() == doctest::Approx(p2 / pr).epsilon(1e-10));
  }
  CHECK(checked >= 5);
}

TEST_CASE("remove then insert restores consistent statistics") {
  const Corpus c = test::fixture().slice(15);
  ModelParams p;
  p.phonemes = empirical_phoneme_dist(c);
  BigramModel m(p);
  Rng rng(12);
  const SegState s = c.gold();
  m.reset(c, s, rng);
  const BigramCounts before = m.count_tokens(c, s);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t site;
    do {
      site = rng.below(c.internal_positions());
    } while (s.boundaries[site]);
    const Window win = window_at(m, c, s, site);
    m.remove(win, false, rng);
    const auto sc = m.score(win);
    m.insert(win, false, sc, rng);
    CHECK_NOTHROW(m.counts().check_seating());
  }
  CHECK(m.counts().same_tokens(before));
}

TEST_CASE("removing a token that is not there is an invariant error") {
  BigramModel m(test::params_ab());
  Rng rng(0);
  Window win{m.intern("ab"), m.intern("a"), m.intern("b")};
  CHECK_THROWS_AS(m.remove(win, false, rng), InvariantError);
}

}  // TEST_SUITE
