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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wordseg {

using WordId = std::uint32_t;

/// Reserved id of the utterance-boundary token.
inline constexpr WordId kBoundary = 0;

/// Interns word strings to dense ids. Ids are never reused; the boundary
/// token owns id 0 and has the empty spelling (no real word is empty).
class Lexicon {
 public:
  Lexicon();
  Lexicon(const Lexicon& other);
  Lexicon& operator=(const Lexicon& other);
  Lexicon(Lexicon&&) noexcept = default;
  Lexicon& operator=(Lexicon&&) noexcept = default;

  WordId intern(std::string_view word);
  std::optional<WordId> find(std::string_view word) const;
  std::string_view word(WordId id) const { return *words_[id]; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  void rebuild_index();

  std::unordered_map<std::string, WordId, Hash, std::equal_to<>> ids_;
  std::vector<const std::string*> words_;
};

}  // namespace wordseg
