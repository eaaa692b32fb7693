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

#include "wordseg/lexicon.hpp"

namespace wordseg {

Lexicon::Lexicon() { intern(""); }

Lexicon::Lexicon(const Lexicon& other) : ids_(other.ids_) { rebuild_index(); }

Lexicon& Lexicon::operator=(const Lexicon& other) {
  if (this != &other) {
    ids_ = other.ids_;
    rebuild_index();
  }
  return *this;
}

void Lexicon::rebuild_index() {
  words_.assign(ids_.size(), nullptr);
  for (const auto& [w, id] : ids_) words_[id] = &w;
}

WordId Lexicon::intern(std::string_view word) {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  const auto id = static_cast<WordId>(words_.size());
  auto [it, inserted] = ids_.emplace(std::string(word), id);
  words_.push_back(&it->first);
  return id;
}

std::optional<WordId> Lexicon::find(std::string_view word) const {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  return std::nullopt;
}

}  // namespace wordseg
