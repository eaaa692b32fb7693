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

#include "wordseg/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <variant>

#include "wordseg/rng.hpp"
#include "wordseg/unigram.hpp"

namespace wordseg {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::unigram ? "unigram" : "bigram";
}

std::string_view to_string(Aggregate mode) {
  return mode == Aggregate::final ? "final" : "marginal";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "unigram") return ModelKind::unigram;
  if (name == "bigram") return ModelKind::bigram;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

Aggregate parse_aggregate(std::string_view name) {
  if (name == "final") return Aggregate::final;
  if (name == "marginal") return Aggregate::marginal;
  throw std::invalid_argument("unknown aggregate mode '" + std::string(name) + "'");
}

void AnnealSchedule::validate() const {
  if (sample_every == 0) throw std::invalid_argument("sample_every must be >= 1");
  if (!(gamma_max >= 1.0) || !std::isfinite(gamma_max)) {
    throw std::invalid_argument("gamma_max must be a finite value >= 1");
  }
  if (gamma_steps == 0) throw std::invalid_argument("gamma_steps must be >= 1");
}

double AnnealSchedule::gamma(std::size_t iteration) const {
  if (iteration >= burn_in || gamma_max == 1.0) return 1.0;
  if (gamma_steps == 1) return gamma_max;
  const std::size_t plateau = iteration * gamma_steps / burn_in;
  const double frac = static_cast<double>(gamma_steps - 1 - plateau) /
                      static_cast<double>(gamma_steps - 1);
  return std::pow(gamma_max, frac);
}

void VocabPrior::validate() const {
  if (!(boost >= 1.0)) throw std::invalid_argument("vocabulary boost must be >= 1");
  for (const auto& w : words) {
    if (w.empty() || !std::all_of(w.begin(), w.end(), is_phoneme)) {
      throw std::invalid_argument("vocabulary word '" + w + "' is not a phoneme sequence");
    }
  }
}

namespace {

template <typename Model>
class Chain {
 public:
  Chain(const Corpus& corpus, const ModelParams& params, SegState init,
        const SamplerOptions& options)
      : corpus_(corpus),
        model_(make_model(params, options.seating)),
        state_(std::move(init)),
        rng_(options.seed),
        random_scan_(options.random_scan) {
    check_matches(corpus_, state_);
    if (options.vocab) {
      options.vocab->validate();
      if (options.vocab->boost != 1.0 && !options.vocab->words.empty()) {
        vocab_ = &*options.vocab;
        log_boost_ = std::log(vocab_->boost);
      }
    }
    if constexpr (Model::kUsesContext) {
      model_.reset(corpus_, state_, rng_);
    } else {
      model_.reset(corpus_, state_);
    }
    site_utt_.reserve(corpus_.internal_positions());
    for (std::size_t u = 0; u < corpus_.size(); ++u) {
      const std::size_t inner = corpus_.utterance(u).size() - 1;
      site_utt_.insert(site_utt_.end(), inner, static_cast<std::uint32_t>(u));
    }
    order_.resize(site_utt_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    tokens_ = wordseg::token_count(corpus_, state_);
  }

  void resample_site(std::size_t position, double gamma) {
    const std::size_t u = site_utt_.at(position);
    const std::string_view utt = corpus_.utterance(u);
    const std::size_t base = corpus_.offset(u);
    const std::size_t j = position - base;
    const auto& b = state_.boundaries;

    // token start: one past the nearest boundary to the left of j
    std::size_t s = j;
    while (s > 0 && !b[base + s - 1]) --s;
    // token end: one past the nearest boundary to the right of j
    std::size_t e = j + 2;
    while (e < utt.size() && !b[base + e - 1]) ++e;

    Window win;
    win.w1 = model_.intern(utt.substr(s, e - s));
    win.w2 = model_.intern(utt.substr(s, j + 1 - s));
    win.w3 = model_.intern(utt.substr(j + 1, e - j - 1));
    win.final = e == utt.size();
    if constexpr (Model::kUsesContext) {
      if (s > 0) {
        std::size_t ls = s - 1;
        while (ls > 0 && !b[base + ls - 1]) --ls;
        win.left = model_.intern(utt.substr(ls, s - ls));
      }
      if (!win.final) {
        std::size_t re = e + 1;
        while (re < utt.size() && !b[base + re - 1]) ++re;
        win.right = model_.intern(utt.substr(e, re - e));
      }
    }

    const bool had = b[position] != 0;
    model_.remove(win, had, rng_);
    const auto scored = model_.score(win);
    const HypothesisWeights& raw = Model::weights(scored);
    HypothesisWeights w{raw.log_h1 / gamma, raw.log_h2 / gamma};

    bool boundary;
    if (vocab_ != nullptr) {
      const bool q1 = in_vocab(win.w1);
      const bool q2 = in_vocab(win.w2) && in_vocab(win.w3);
      if (std::isinf(vocab_->boost)) {
        if (q1 != q2) {
          boundary = q2;
        } else {
          boundary = !(rng_.uniform() < w.prob_h1());
        }
      } else {
        if (q1) w.log_h1 += log_boost_;
        if (q2) w.log_h2 += log_boost_;
        boundary = !(rng_.uniform() < w.prob_h1());
      }
    } else {
      boundary = !(rng_.uniform() < w.prob_h1());
    }

    model_.insert(win, boundary, scored, rng_);
    state_.boundaries[position] = boundary ? 1 : 0;
    if (boundary != had) tokens_ = boundary ? tokens_ + 1 : tokens_ - 1;
  }

  void sweep(double gamma) {
    if (random_scan_) {
      for (std::size_t i = order_.size(); i > 1; --i) {
        std::swap(order_[i - 1], order_[rng_.below(i)]);
      }
    }
    for (std::size_t p : order_) resample_site(p, gamma);
  }

  const SegState& state() const noexcept { return state_; }
  std::size_t token_count() const noexcept { return tokens_; }
  double log_joint() const { return model_.log_joint(); }

  void check_counts() {
    const auto rebuilt = model_.count_tokens(corpus_, state_);
    if constexpr (Model::kUsesContext) {
      if (!rebuilt.same_tokens(model_.counts())) {
        throw InvariantError("incremental bigram counts differ from a rebuild");
      }
      model_.counts().check_seating();
    } else {
      if (!(rebuilt == model_.counts())) {
        throw InvariantError("incremental unigram counts differ from a rebuild");
      }
    }
    if (tokens_ != wordseg::token_count(corpus_, state_)) {
      throw InvariantError("token count drifted from the segmentation");
    }
  }

 private:
  static Model make_model(const ModelParams& params, Seating seating) {
    if constexpr (Model::kUsesContext) {
      return Model(params, seating);
    } else {
      (void)seating;
      return Model(params);
    }
  }

  bool in_vocab(WordId id) {
    if (id >= vocab_cache_.size()) vocab_cache_.resize(id + 1, -1);
    auto& c = vocab_cache_[id];
    if (c < 0) c = vocab_->contains(model_.lexicon().word(id)) ? 1 : 0;
    return c == 1;
  }

  const Corpus& corpus_;
  Model model_;
  SegState state_;
  Rng rng_;
  bool random_scan_;
  const VocabPrior* vocab_ = nullptr;
  double log_boost_ = 0.0;
  std::vector<std::int8_t> vocab_cache_;
  std::vector<std::uint32_t> site_utt_;
  std::vector<std::size_t> order_;
  std::size_t tokens_ = 0;
};

}  // namespace

struct GibbsChain::Impl {
  // the vocabulary prior is copied so the chain does not depend on the
  // caller's options object
  SamplerOptions options;
  std::variant<Chain<UnigramModel>, Chain<BigramModel>> chain;

  static std::variant<Chain<UnigramModel>, Chain<BigramModel>> make(
      const Corpus& corpus, const ModelParams& params, SegState init,
      const SamplerOptions& options) {
    if (options.model == ModelKind::unigram) {
      return std::variant<Chain<UnigramModel>, Chain<BigramModel>>(
          std::in_place_index<0>, corpus, params, std::move(init), options);
    }
    return std::variant<Chain<UnigramModel>, Chain<BigramModel>>(
        std::in_place_index<1>, corpus, params, std::move(init), options);
  }

  Impl(const Corpus& corpus, const ModelParams& params, SegState init,
       const SamplerOptions& opts)
      : options(opts), chain(make(corpus, params, std::move(init), options)) {}
};

GibbsChain::GibbsChain(const Corpus& corpus, const ModelParams& params, SegState init,
                       const SamplerOptions& options)
    : impl_(std::make_unique<Impl>(corpus, params, std::move(init), options)) {}
GibbsChain::~GibbsChain() = default;
GibbsChain::GibbsChain(GibbsChain&&) noexcept = default;
GibbsChain& GibbsChain::operator=(GibbsChain&&) noexcept = default;

void GibbsChain::resample_site(std::size_t position, double gamma) {
  std::visit([&](auto& c) { c.resample_site(position, gamma); }, impl_->chain);
}

void GibbsChain::sweep(double gamma) {
  std::visit([&](auto& c) { c.sweep(gamma); }, impl_->chain);
}

const SegState& GibbsChain::state() const noexcept {
  return std::visit([](const auto& c) -> const SegState& { return c.state(); }, impl_->chain);
}

std::size_t GibbsChain::token_count() const noexcept {
  return std::visit([](const auto& c) { return c.token_count(); }, impl_->chain);
}

double GibbsChain::log_joint() const {
  return std::visit([](const auto& c) { return c.log_joint(); }, impl_->chain);
}

void GibbsChain::check_counts() {
  std::visit([](auto& c) { c.check_counts(); }, impl_->chain);
}

SamplerOutput run(const Corpus& corpus, const ModelParams& params, const SegState& init,
                  const SamplerOptions& options) {
  params.validate();
  options.schedule.validate();
  const AnnealSchedule& sched = options.schedule;

  SamplerOutput out;
  out.seed = options.seed;
  out.model = options.model;
  out.params = params;
  out.schedule = sched;
  out.boundary_freq.assign(corpus.internal_positions(), 0.0);
  std::vector<std::size_t> tally(corpus.internal_positions(), 0);

  GibbsChain chain(corpus, params, init, options);
  if (options.check_counts) chain.check_counts();
  for (std::size_t it = 0; it < sched.iterations(); ++it) {
    const double gamma = sched.gamma(it);
    chain.sweep(gamma);
    if (options.check_counts) chain.check_counts();
    if (options.record_trace) {
      out.trace.push_back({it, chain.log_joint(), chain.token_count(), gamma});
    }
    if (sched.collects(it)) {
      const auto& bits = chain.state().boundaries;
      for (std::size_t p = 0; p < bits.size(); ++p) tally[p] += bits[p];
      ++out.sample_count;
      if (options.keep_samples) out.samples.push_back(chain.state());
    }
  }
  if (out.sample_count > 0) {
    for (std::size_t p = 0; p < tally.size(); ++p) {
      out.boundary_freq[p] = static_cast<double>(tally[p]) / static_cast<double>(out.sample_count);
    }
  }
  out.final_state = chain.state();
  return out;
}

SegState aggregate(const std::vector<SegState>& samples, Aggregate mode) {
  if (samples.empty()) throw std::invalid_argument("cannot aggregate zero samples");
  if (mode == Aggregate::final) return samples.back();
  const std::size_t len = samples.front().boundaries.size();
  std::vector<std::size_t> votes(len, 0);
  for (const auto& s : samples) {
    if (s.boundaries.size() != len) throw std::invalid_argument("samples differ in length");
    for (std::size_t p = 0; p < len; ++p) votes[p] += s.boundaries[p];
  }
  SegState out;
  out.boundaries.resize(len);
  for (std::size_t p = 0; p < len; ++p) out.boundaries[p] = 2 * votes[p] > samples.size() ? 1 : 0;
  return out;
}

VocabPrior build_vocab_prior(const Corpus& corpus, std::size_t v, double boost,
                             std::uint64_t seed) {
  std::map<std::string, std::int64_t, std::less<>> freq;
  for_each_token(corpus, corpus.gold(), [&](std::size_t, std::string_view w, bool) {
    auto it = freq.find(w);
    if (it == freq.end()) {
      freq.emplace(std::string(w), 1);
    } else {
      ++it->second;
    }
  });
  if (v > freq.size()) {
    throw std::invalid_argument("vocabulary size exceeds the number of gold word types");
  }
  std::vector<std::pair<std::string, std::int64_t>> pool(freq.begin(), freq.end());
  std::int64_t total = 0;
  for (const auto& [w, c] : pool) total += c;

  VocabPrior prior;
  prior.boost = boost;
  Rng rng(seed);
  for (std::size_t k = 0; k < v; ++k) {
    auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
    std::size_t i = 0;
    while ((r -= pool[i].second) >= 0) ++i;
    total -= pool[i].second;
    prior.words.insert(std::move(pool[i].first));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  prior.validate();
  return prior;
}

}  // namespace wordseg
