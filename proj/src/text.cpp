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

#include "semannot/text.hpp"

#include <clocale>
#include <cstdint>
#include <cwctype>
#include <fstream>
#include <istream>

#include <locale.h>

#include "semannot/error.hpp"

namespace semannot {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 code point starting at pos; malformed bytes yield kInvalid
// and consume a single byte.
char32_t next_codepoint(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos++]);
  if (lead < 0x80) return lead;
  std::size_t extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    return kInvalid;
  }
  if (pos + extra > s.size()) return kInvalid;
  for (std::size_t i = 0; i < extra; ++i) {
    const auto c = static_cast<unsigned char>(s[pos + i]);
    if ((c & 0xC0) != 0x80) return kInvalid;
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += extra;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Unicode classification through the C.UTF-8 locale; ASCII-only when unavailable.
class LetterClassifier {
 public:
  LetterClassifier() {
    locale_ = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(nullptr));
  }
  ~LetterClassifier() {
    if (locale_ != static_cast<locale_t>(nullptr)) freelocale(locale_);
  }
  LetterClassifier(const LetterClassifier&) = delete;
  LetterClassifier& operator=(const LetterClassifier&) = delete;

  bool is_letter(char32_t cp) const {
    if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (cp == kInvalid || locale_ == static_cast<locale_t>(nullptr)) return false;
    return iswalpha_l(static_cast<wint_t>(cp), locale_) != 0;
  }

  char32_t to_lower(char32_t cp) const {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
    return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), locale_));
  }

 private:
  locale_t locale_;
};

const LetterClassifier& classifier() {
  static const LetterClassifier instance;
  return instance;
}

bool is_hyphen(char32_t cp) { return cp == U'-' || cp == U'‐'; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// One rewriting step; returns the word unchanged when no rule fires.
std::string suffix_step(std::string_view w) {
  if (w.size() > 4 && ends_with(w, "ies")) {
    return std::string(w.substr(0, w.size() - 3)) + "y";
  }
  if (ends_with(w, "sses")) return std::string(w.substr(0, w.size() - 2));
  if (w.size() > 3 && ends_with(w, "es")) {
    const auto stem = w.substr(0, w.size() - 2);
    if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
        ends_with(stem, "ch") || ends_with(stem, "sh")) {
      return std::string(stem);
    }
    return std::string(w.substr(0, w.size() - 1));
  }
  if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return std::string(w.substr(0, w.size() - 1));
  }
  return std::string(w);
}

}  // namespace

TokenSequence tokenize(std::string_view text) {
  const auto& cls = classifier();
  TokenSequence tokens;
  std::string current;
  std::size_t current_len = 0;
  bool prev_letter = false;

  auto flush = [&] {
    if (current_len >= 2) tokens.push_back(std::move(current));
    current.clear();
    current_len = 0;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = next_codepoint(text, pos);
    if (cls.is_letter(cp)) {
      append_utf8(current, cls.to_lower(cp));
      ++current_len;
      prev_letter = true;
      continue;
    }
    if (is_hyphen(cp) && prev_letter && pos < text.size()) {
      std::size_t peek = pos;
      if (cls.is_letter(next_codepoint(text, peek))) {
        prev_letter = false;
        continue;  // join the two letter runs
      }
    }
    prev_letter = false;
    flush();
  }
  flush();
  return tokens;
}

void LemmaTable::add(std::string surface, std::string lemma) {
  if (auto it = entries_.find(lemma); it != entries_.end() && it->second != lemma) {
    throw Error("lemma table: '" + lemma + "' is both a lemma and maps to '" + it->second + "'");
  }
  if (auto it = entries_.find(surface); it != entries_.end()) {
    if (it->second == lemma) return;
    // A surface previously registered only as an implicit lemma may not be remapped.
    throw Error("lemma table: conflicting entries for '" + surface + "'");
  }
  entries_.emplace(lemma, lemma);
  entries_.emplace(std::move(surface), std::move(lemma));
}

std::optional<std::string_view> LemmaTable::lookup(std::string_view surface) const {
  const auto it = entries_.find(surface);
  if (it == entries_.end()) return std::nullopt;
  return std::string_view(it->second);
}

LemmaTable LemmaTable::read(std::istream& in) {
  LemmaTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("expected surface<TAB>lemma", line_no);
    }
    auto surface = tokenize(line.substr(0, tab));
    auto lemma = tokenize(line.substr(tab + 1));
    if (surface.size() != 1 || lemma.size() != 1) {
      throw ParseError("lemma table entries must be single tokens", line_no);
    }
    try {
      table.add(std::move(surface.front()), std::move(lemma.front()));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return table;
}

LemmaTable LemmaTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read(in);
}

std::string apply_suffix_rules(std::string_view word) {
  std::string current(word);
  while (true) {
    std::string next = suffix_step(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

std::string lemmatize_token(std::string_view token, const LemmaTable& table) {
  if (const auto lemma = table.lookup(token)) return std::string(*lemma);
  std::string reduced = apply_suffix_rules(token);
  // The reduced form may itself be a table surface; map it so a second pass is a no-op.
  if (const auto lemma = table.lookup(reduced)) return std::string(*lemma);
  return reduced;
}

TokenSequence lemmatize(const TokenSequence& tokens, const LemmaTable& table) {
  TokenSequence out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lemmatize_token(t, table));
  return out;
}

}  // namespace semannot
