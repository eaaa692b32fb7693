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

#include "wordseg/corpus.hpp"

#include <fstream>
#include <sstream>

#include "wordseg/rng.hpp"

namespace wordseg {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Corpus::Corpus(std::vector<std::string> utterances, std::optional<SegState> gold)
    : utterances_(std::move(utterances)), gold_(std::move(gold)) {
  offsets_.reserve(utterances_.size() + 1);
  offsets_.push_back(0);
  for (const auto& u : utterances_) {
    if (u.empty()) throw std::invalid_argument("empty utterance");
    for (char c : u) {
      if (!is_phoneme(c)) throw std::invalid_argument("invalid phoneme in utterance");
    }
    phonemes_ += u.size();
    offsets_.push_back(offsets_.back() + u.size() - 1);
  }
  if (gold_) check_matches(*this, *gold_);
}

const SegState& Corpus::gold() const {
  if (!gold_) throw std::logic_error("corpus has no gold segmentation");
  return *gold_;
}

Corpus Corpus::slice(std::size_t n) const {
  if (n >= size()) return *this;
  std::vector<std::string> utts(utterances_.begin(), utterances_.begin() + n);
  std::optional<SegState> gold;
  if (gold_) {
    gold.emplace();
    gold->boundaries.assign(gold_->boundaries.begin(),
                            gold_->boundaries.begin() + static_cast<std::ptrdiff_t>(offsets_[n]));
  }
  return Corpus(std::move(utts), std::move(gold));
}

Corpus parse_corpus(std::string_view text) {
  std::vector<std::string> utterances;
  SegState gold;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.remove_suffix(1);
    }
    if (line.empty()) throw ParseError(line_no, "empty line");

    std::string phonemes;
    phonemes.reserve(line.size());
    std::vector<std::uint8_t> bits;
    bool word_open = false;
    for (char c : line) {
      if (c == ' ') {
        if (!word_open) throw ParseError(line_no, "empty word (leading or repeated space)");
        bits.back() = 1;
        word_open = false;
        continue;
      }
      if (!is_phoneme(c)) {
        throw ParseError(line_no, "invalid phoneme character (code " +
                                      std::to_string(static_cast<unsigned char>(c)) + ")");
      }
      phonemes.push_back(c);
      bits.push_back(0);
      word_open = true;
    }
    // the slot after the last phoneme is the utterance end, not an internal position
    bits.pop_back();
    gold.boundaries.insert(gold.boundaries.end(), bits.begin(), bits.end());
    utterances.push_back(std::move(phonemes));
  }
  return Corpus(std::move(utterances), std::move(gold));
}

Corpus read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

void check_matches(const Corpus& corpus, const SegState& state) {
  if (state.boundaries.size() != corpus.internal_positions()) {
    throw std::invalid_argument("segmentation has " + std::to_string(state.boundaries.size()) +
                                " positions, corpus has " +
                                std::to_string(corpus.internal_positions()));
  }
}

std::string render(const Corpus& corpus, const SegState& state) {
  check_matches(corpus, state);
  std::string out;
  out.reserve(corpus.phoneme_count() * 2);
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    const std::string_view utt = corpus.utterance(u);
    const std::size_t base = corpus.offset(u);
    for (std::size_t j = 0; j < utt.size(); ++j) {
      out.push_back(utt[j]);
      if (j + 1 < utt.size() && state.boundaries[base + j]) out.push_back(' ');
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<Span> token_spans(const Corpus& corpus, const SegState& state, std::size_t u) {
  std::vector<Span> spans;
  const std::size_t len = corpus.utterance(u).size();
  const std::size_t base = corpus.offset(u);
  std::size_t begin = 0;
  for (std::size_t j = 0; j + 1 < len; ++j) {
    if (state.boundaries[base + j]) {
      spans.push_back({begin, j + 1});
      begin = j + 1;
    }
  }
  spans.push_back({begin, len});
  return spans;
}

std::vector<std::string_view> tokens(const Corpus& corpus, const SegState& state,
                                     std::size_t u) {
  std::vector<std::string_view> out;
  const std::string_view utt = corpus.utterance(u);
  for (const Span& s : token_spans(corpus, state, u)) out.push_back(utt.substr(s.begin, s.size()));
  return out;
}

std::size_t token_count(const Corpus& corpus, const SegState& state) {
  std::size_t n = corpus.size();
  for (auto b : state.boundaries) n += b ? 1 : 0;
  return n;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  const SegState& gold = corpus.gold();
  CorpusStats s;
  s.utterances = corpus.size();
  s.words = token_count(corpus, gold);
  s.phonemes = corpus.phoneme_count();
  if (s.utterances > 0) {
    s.words_per_utterance = static_cast<double>(s.words) / static_cast<double>(s.utterances);
    s.phonemes_per_word = static_cast<double>(s.phonemes) / static_cast<double>(s.words);
  }
  return s;
}

SegState no_boundaries(const Corpus& corpus) {
  return SegState{std::vector<std::uint8_t>(corpus.internal_positions(), 0)};
}

SegState random_init(const Corpus& corpus, double p_init, std::uint64_t seed) {
  if (!(p_init >= 0.0 && p_init <= 1.0)) {
    throw std::invalid_argument("p_init must lie in [0, 1]");
  }
  Rng rng(seed);
  SegState state = no_boundaries(corpus);
  for (auto& b : state.boundaries) b = rng.bernoulli(p_init) ? 1 : 0;
  return state;
}

SegState perturb_gold(const Corpus& corpus, std::size_t k, std::uint64_t seed) {
  SegState state = corpus.gold();
  const std::size_t positions = state.boundaries.size();
  if (positions == 0) return state;
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    auto& b = state.boundaries[rng.below(positions)];
    b = b ? 0 : 1;
  }
  return state;
}

}  // namespace wordseg
