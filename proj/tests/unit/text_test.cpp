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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "semannot/error.hpp"
#include "semannot/text.hpp"

namespace semannot {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenizeTest, HandExamples) {
  EXPECT_EQ(tokenize("Interest-rate hikes, 2021!"), (Tokens{"interestrate", "hikes"}));
  EXPECT_EQ(tokenize(""), Tokens{});
  EXPECT_EQ(tokenize("AB"), Tokens{"ab"});
}

TEST(TokenizeTest, HyphenRules) {
  EXPECT_EQ(tokenize("state-of-the-art"), Tokens{"stateoftheart"});
  EXPECT_EQ(tokenize("covid-19 crisis"), (Tokens{"covid", "crisis"}));
  EXPECT_EQ(tokenize("pre- and post-war"), (Tokens{"pre", "and", "postwar"}));
  EXPECT_EQ(tokenize("a-b"), Tokens{"ab"});
  EXPECT_EQ(tokenize("x--y"), Tokens{});
}

TEST(TokenizeTest, DropsShortTokensAndDigits) {
  EXPECT_EQ(tokenize("a b cd 12 e3fg"), (Tokens{"cd", "fg"}));
}

TEST(TokenizeTest, UnicodeLettersAreLowerCased) {
  EXPECT_EQ(tokenize("\xC3\x9C" "ber M\xC3\xA4rkte"), (Tokens{"\xC3\xBC" "ber", "m\xC3\xA4rkte"}));
}

TEST(TokenizeTest, AsciiAlphabetProperty) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ch(32, 126);
  for (int t = 0; t < 2000; ++t) {
    std::string s;
    const int n = t % 60;
    for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(ch(rng)));
    const auto tokens = tokenize(s);
    EXPECT_EQ(tokens, tokenize(s));
    for (const auto& tok : tokens) {
      EXPECT_GE(tok.size(), 2u);
      for (const char c : tok) EXPECT_TRUE(c >= 'a' && c <= 'z') << s;
    }
  }
}

TEST(TokenizeTest, RandomUnicodeProperty) {
  // Arbitrary bytes, including invalid UTF-8: tokens never contain ASCII
  // non-letters or upper case and are at least two code points long.
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> byte(1, 255);
  for (int t = 0; t < 2000; ++t) {
    std::string s;
    for (int i = 0; i < t % 80; ++i) s.push_back(static_cast<char>(byte(rng)));
    for (const auto& tok : tokenize(s)) {
      std::size_t codepoints = 0;
      for (const unsigned char c : tok) {
        if ((c & 0xC0) != 0x80) ++codepoints;
        if (c < 0x80) {
          EXPECT_TRUE(c >= 'a' && c <= 'z');
        }
      }
      EXPECT_GE(codepoints, 2u);
    }
  }
}

TEST(LemmatizeTest, HandExamples) {
  const LemmaTable empty;
  EXPECT_EQ(lemmatize({"policies"}, empty), Tokens{"policy"});
  LemmaTable table;
  table.add("data", "datum");
  EXPECT_EQ(lemmatize({"data"}, table), Tokens{"datum"});
  EXPECT_EQ(lemmatize({"ab"}, empty), Tokens{"ab"});
}

TEST(LemmatizeTest, SuffixRules) {
  EXPECT_EQ(apply_suffix_rules("classes"), "class");
  EXPECT_EQ(apply_suffix_rules("taxes"), "tax");
  EXPECT_EQ(apply_suffix_rules("churches"), "church");
  EXPECT_EQ(apply_suffix_rules("rates"), "rate");
  EXPECT_EQ(apply_suffix_rules("hikes"), "hike");
  EXPECT_EQ(apply_suffix_rules("bus"), "bus");
  EXPECT_EQ(apply_suffix_rules("crisis"), "crisis");
  EXPECT_EQ(apply_suffix_rules("glass"), "glass");
  EXPECT_EQ(apply_suffix_rules("its"), "its");
  EXPECT_EQ(apply_suffix_rules("ties"), "tie");
}

TEST(LemmatizeTest, PreservesOrder) {
  EXPECT_EQ(lemmatize({"banks", "rates", "ab"}, LemmaTable{}), (Tokens{"bank", "rate", "ab"}));
}

TEST(LemmatizeTest, IdempotentOnRandomWords) {
  LemmaTable table;
  table.add("mice", "mouse");
  table.add("data", "datum");
  table.add("indices", "index");
  table.add("news", "news");
  std::mt19937_64 rng(17);
  const std::string letters = "abcehisuxyz";
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::uniform_int_distribution<int> len(2, 10);
  for (int t = 0; t < 5000; ++t) {
    Tokens words;
    for (int w = 0; w < 4; ++w) {
      std::string s;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) s.push_back(letters[pick(rng)]);
      words.push_back(s);
    }
    words.push_back(t % 2 == 0 ? "mice" : "indices");
    const auto once = lemmatize(words, table);
    EXPECT_EQ(lemmatize(once, table), once);
  }
}

TEST(LemmaTableTest, ReadsTabSeparatedFile) {
  std::istringstream in("# comment\nmice\tmouse\n\ngeese\tgoose\r\n");
  const auto table = LemmaTable::read(in);
  EXPECT_EQ(table.lookup("mice"), std::optional<std::string_view>("mouse"));
  EXPECT_EQ(table.lookup("mouse"), std::optional<std::string_view>("mouse"));
  EXPECT_EQ(table.lookup("goose"), std::optional<std::string_view>("goose"));
  EXPECT_FALSE(table.lookup("cat").has_value());
}

TEST(LemmaTableTest, RejectsConflictsAndBadLines) {
  LemmaTable t;
  t.add("a1", "b1");
  EXPECT_THROW(t.add("b1", "c1"), Error);
  EXPECT_THROW(t.add("a1", "z1"), Error);
  std::istringstream bad("only-one-column\n");
  EXPECT_THROW(LemmaTable::read(bad), ParseError);
}

TEST(PreprocessorTest, TokenizesThenLemmatizes) {
  const Preprocessor p;
  EXPECT_EQ(p("Interest-rate hikes, 2021!"), (Tokens{"interestrate", "hike"}));
}

}  // namespace
}  // namespace semannot
