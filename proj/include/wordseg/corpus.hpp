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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wordseg {

/// Raised for malformed corpus text. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A phoneme is one printable, non-space ASCII character.
constexpr bool is_phoneme(char c) noexcept {
  return c > ' ' && c < 0x7f;
}

/// Word boundary hypothesis: one flag per utterance-internal position,
/// flattened across the corpus in utterance order. Position j of an
/// utterance sits between phonemes j and j+1. Utterance ends are implicit.
struct SegState {
  std::vector<std::uint8_t> boundaries;

  bool operator==(const SegState&) const = default;
};

/// Half-open phoneme span [begin, end) inside one utterance.
struct Span {
  std::size_t begin;
  std::size_t end;

  std::size_t size() const noexcept { return end - begin; }
  bool operator==(const Span&) const = default;
};

class Corpus {
 public:
  Corpus() : offsets_{0} {}
  explicit Corpus(std::vector<std::string> utterances,
                  std::optional<SegState> gold = std::nullopt);

  std::size_t size() const noexcept { return utterances_.size(); }
  bool empty() const noexcept { return utterances_.empty(); }
  std::string_view utterance(std::size_t u) const { return utterances_[u]; }
  const std::vector<std::string>& utterances() const noexcept { return utterances_; }

  /// Index of utterance u's first internal position in a SegState.
  std::size_t offset(std::size_t u) const { return offsets_[u]; }
  std::size_t internal_positions() const noexcept { return offsets_.back(); }
  std::size_t phoneme_count() const noexcept { return phonemes_; }

  bool has_gold() const noexcept { return gold_.has_value(); }
  /// Throws std::logic_error when the corpus carries no gold segmentation.
  const SegState& gold() const;

  /// The first n utterances (all of them if n >= size()).
  Corpus slice(std::size_t n) const;

 private:
  std::vector<std::string> utterances_;
  std::vector<std::size_t> offsets_;
  std::size_t phonemes_ = 0;
  std::optional<SegState> gold_;
};

/// Parses Brent-format text: one utterance per line, words separated by a
/// single space. Trailing whitespace on a line is ignored.
Corpus parse_corpus(std::string_view text);
Corpus read_corpus(const std::filesystem::path& path);

/// Renders `state` over `corpus` in the same line format parse_corpus reads.
std::string render(const Corpus& corpus, const SegState& state);

/// Throws std::invalid_argument unless `state` has one flag per internal
/// position of `corpus`.
void check_matches(const Corpus& corpus, const SegState& state);

/// Word spans of utterance u under `state`.
std::vector<Span> token_spans(const Corpus& corpus, const SegState& state, std::size_t u);

/// Words of utterance u under `state`, as views into the corpus.
std::vector<std::string_view> tokens(const Corpus& corpus, const SegState& state,
                                     std::size_t u);

/// Calls fn(u, word, is_final) for every token of the corpus in order.
template <typename Fn>
void for_each_token(const Corpus& corpus, const SegState& state, Fn&& fn) {
  for (std::size_t u = 0; u < corpus.size(); ++u) {
    const std::string_view utt = corpus.utterance(u);
    const std::size_t base = corpus.offset(u);
    std::size_t begin = 0;
    for (std::size_t j = 0; j + 1 < utt.size(); ++j) {
      if (state.boundaries[base + j]) {
        fn(u, utt.substr(begin, j + 1 - begin), false);
        begin = j + 1;
      }
    }
    fn(u, utt.substr(begin), true);
  }
}

std::size_t token_count(const Corpus& corpus, const SegState& state);

struct CorpusStats {
  std::size_t utterances = 0;
  std::size_t words = 0;
  std::size_t phonemes = 0;
  double words_per_utterance = 0.0;
  double phonemes_per_word = 0.0;
};

/// Gold-segmentation statistics. Throws std::logic_error without gold.
CorpusStats corpus_stats(const Corpus& corpus);

SegState no_boundaries(const Corpus& corpus);

/// Each internal position independently gets a boundary with
/// probability p_init.
SegState random_init(const Corpus& corpus, double p_init, std::uint64_t seed);

/// Gold segmentation with k toggles at uniformly chosen internal positions
/// (drawn with replacement, so a position may flip back).
SegState perturb_gold(const Corpus& corpus, std::size_t k, std::uint64_t seed);

}  // namespace wordseg
