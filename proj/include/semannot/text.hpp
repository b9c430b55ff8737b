// Copyright 2026 The Semannot Authors.
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

#ifndef SEMANNOT_TEXT_HPP_
#define SEMANNOT_TEXT_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semannot {

// Lower-cased alphabetic tokens, each at least two letters long.
using TokenSequence = std::vector<std::string>;

// Splits raw UTF-8 text into tokens. Letter runs joined by a single hyphen are
// merged ("state-of-the-art" -> "stateoftheart"); every other non-letter splits.
// Tokens shorter than two letters are dropped.
TokenSequence tokenize(std::string_view text);

// Surface form -> lemma dictionary. Every lemma is also a key mapping to
// itself, so lookups are idempotent.
class LemmaTable {
 public:
  LemmaTable() = default;

  // Throws when the new pair breaks idempotence (a lemma that already maps elsewhere).
  void add(std::string surface, std::string lemma);

  std::optional<std::string_view> lookup(std::string_view surface) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

  // `surface<TAB>lemma` lines; `#` starts a comment line.
  static LemmaTable read(std::istream& in);
  static LemmaTable load(const std::filesystem::path& path);

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Built-in English suffix rules, applied until the word stops changing.
std::string apply_suffix_rules(std::string_view word);

std::string lemmatize_token(std::string_view token, const LemmaTable& table);
TokenSequence lemmatize(const TokenSequence& tokens, const LemmaTable& table);

// tokenize followed by lemmatize; shared by documents and thesaurus phrases.
class Preprocessor {
 public:
  Preprocessor() = default;
  explicit Preprocessor(LemmaTable table) : table_(std::move(table)) {}

  TokenSequence operator()(std::string_view text) const {
    return lemmatize(tokenize(text), table_);
  }

  const LemmaTable& lemma_table() const { return table_; }

 private:
  LemmaTable table_;
};

}  // namespace semannot

#endif  // SEMANNOT_TEXT_HPP_
