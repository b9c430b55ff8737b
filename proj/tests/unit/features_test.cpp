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

#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "semannot/error.hpp"
#include "semannot/features.hpp"
#include "test_util.hpp"

namespace semannot {
namespace {

using testing::vec;

TEST(CountTermsTest, HandExamples) {
  const Vocabulary vocab({"a", "b"});
  const auto v = count_terms({"a", "b", "a"}, vocab);
  EXPECT_EQ(v, vec(2, {{0, 2.0}, {1, 1.0}}));
  EXPECT_TRUE(count_terms({"c"}, Vocabulary({"a"})).empty());
  EXPECT_TRUE(count_terms({}, vocab).empty());
}

TEST(VocabularyTest, FitIsSortedAndUnique) {
  const std::vector<TokenSequence> docs{{"zeta", "alpha"}, {"alpha", "mid"}};
  const auto v = Vocabulary::fit(docs);
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"alpha", "mid", "zeta"}));
  EXPECT_EQ(v.index("mid"), std::optional<FeatureIndex>(1));
  EXPECT_FALSE(v.index("other").has_value());
}

ConceptMatcher interest_matcher() {
  return ConceptMatcher({{0, {"interest", "rate"}}, {1, {"rate"}}}, 2);
}

TEST(ConceptMatcherTest, LongestMatchWins) {
  const auto m = interest_matcher();
  EXPECT_EQ(m.extract({"interest", "rate", "hike"}), vec(2, {{0, 1.0}}));
  EXPECT_EQ(m.extract({"rate", "rate"}), vec(2, {{1, 2.0}}));
  EXPECT_TRUE(m.extract({}).empty());
}

TEST(ConceptMatcherTest, SharedPhraseCountsForEveryOwner) {
  const ConceptMatcher m({{0, {"bank"}}, {2, {"bank"}}, {1, {"central", "bank"}}}, 3);
  EXPECT_EQ(m.extract({"bank", "central", "bank"}), vec(3, {{0, 1.0}, {1, 1.0}, {2, 1.0}}));
}

TEST(ConceptMatcherTest, BuildUsesSamePreprocessing) {
  const Thesaurus t({{"c1", "Interest rate", {"interest rates", "cost of money"}}, {"c2", "Rate", {}}});
  const Preprocessor p;
  const auto m = ConceptMatcher::build(t, p);
  EXPECT_EQ(m.n_concepts(), 2u);
  EXPECT_EQ(m.extract(p("Interest rates and the cost of money")), vec(2, {{0, 2.0}}));
}

// Tries every phrase at every position and keeps the longest.
SparseVector naive_extract(const std::vector<ConceptPhrase>& phrases, std::size_t n_concepts,
                           const TokenSequence& tokens) {
  std::map<FeatureIndex, double> counts;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t best = 0;
    for (const auto& p : phrases) {
      if (p.tokens.empty() || i + p.tokens.size() > tokens.size()) continue;
      if (std::equal(p.tokens.begin(), p.tokens.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
        best = std::max(best, p.tokens.size());
      }
    }
    if (best == 0) {
      ++i;
      continue;
    }
    std::set<std::size_t> owners;
    for (const auto& p : phrases) {
      if (p.tokens.size() == best &&
          std::equal(p.tokens.begin(), p.tokens.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
        owners.insert(p.concept_ordinal);
      }
    }
    for (const auto c : owners) counts[static_cast<FeatureIndex>(c)] += 1.0;
    i += best;
  }
  return SparseVector::from_map(counts, n_concepts);
}

TEST(ConceptMatcherTest, MatchesNaiveLongestMatchOracle) {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> words{"aa", "bb", "cc", "dd", "ee"};
  std::uniform_int_distribution<std::size_t> word(0, words.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n_concepts = 1 + rng() % 15;
    std::vector<ConceptPhrase> phrases;
    const std::size_t n_phrases = 1 + rng() % 50;
    for (std::size_t p = 0; p < n_phrases; ++p) {
      TokenSequence t;
      for (std::size_t k = 0, len = 1 + rng() % 4; k < len; ++k) t.push_back(words[word(rng)]);
      phrases.push_back({rng() % n_concepts, t});
    }
    TokenSequence stream;
    for (std::size_t k = 0, len = rng() % 40; k < len; ++k) stream.push_back(words[word(rng)]);
    const ConceptMatcher m(phrases, n_concepts);
    EXPECT_EQ(m.extract(stream), naive_extract(phrases, n_concepts, stream));
  }
}

TEST(WeightingTest, IdfHandExamples) {
  const std::vector<SparseVector> docs{vec(3, {{0, 1.0}, {1, 2.0}}), vec(3, {{0, 3.0}})};
  const auto m = fit_weighting(docs, Weighting::kIdf);
  EXPECT_EQ(m.idf[0], 1.0);
  EXPECT_NEAR(m.idf[1], 1.405465, 1e-6);
  EXPECT_NEAR(m.idf[2], 2.098612, 1e-6);
  EXPECT_EQ(m.n_docs, 2u);
  EXPECT_DOUBLE_EQ(m.mean_doc_len, 3.0);
}

TEST(WeightingTest, EmptyTrainingSetIsAnError) {
  EXPECT_THROW(fit_weighting(std::vector<SparseVector>{}, Weighting::kIdf), Error);
}

TEST(WeightingTest, IdfMatchesBruteForceOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n_docs = 1 + rng() % 20;
    const std::size_t dim = 1 + rng() % 30;
    std::vector<std::vector<double>> dense(n_docs, std::vector<double>(dim, 0.0));
    std::vector<SparseVector> docs;
    for (auto& row : dense) {
      std::map<FeatureIndex, double> m;
      for (std::size_t f = 0; f < dim; ++f) {
        if (rng() % 3 == 0) {
          row[f] = static_cast<double>(1 + rng() % 4);
          m[static_cast<FeatureIndex>(f)] = row[f];
        }
      }
      docs.push_back(vec(dim, m));
    }
    const auto model = fit_weighting(docs, Weighting::kIdf);
    for (std::size_t f = 0; f < dim; ++f) {
      double df = 0.0;
      for (const auto& row : dense) df += row[f] > 0.0 ? 1.0 : 0.0;
      const double expected = 1.0 + std::log((static_cast<double>(n_docs) + 1.0) / (df + 1.0));
      EXPECT_NEAR(model.idf[f], expected, 1e-12);
      EXPECT_GE(model.idf[f], 1.0);
    }
  }
}

TEST(WeightingTest, IdfStrictlyDecreasingInDf) {
  // Feature f appears in exactly f of 10 documents.
  std::vector<SparseVector> docs;
  for (std::size_t d = 0; d < 10; ++d) {
    std::map<FeatureIndex, double> m;
    for (FeatureIndex f = 0; f <= 10; ++f) {
      if (d < f) m[f] = 1.0;
    }
    docs.push_back(vec(11, m));
  }
  const auto model = fit_weighting(docs, Weighting::kIdf);
  for (std::size_t f = 1; f <= 10; ++f) EXPECT_LT(model.idf[f], model.idf[f - 1]);
}

TEST(WeightingTest, ApplyHandExamples) {
  WeightingModel idf;
  idf.scheme = Weighting::kIdf;
  idf.idf = {2.0};
  EXPECT_DOUBLE_EQ(apply_weighting(vec(1, {{0, 3.0}}), idf).at(0), 6.0);

  WeightingModel bm;
  bm.scheme = Weighting::kBm25;
  bm.idf = {1.0, 1.0};
  bm.bm25_k = 1.6;
  bm.bm25_b = 0.0;
  bm.mean_doc_len = 7.0;
  EXPECT_NEAR(apply_weighting(vec(2, {{0, 1.0}}), bm).at(0), 1.0, 1e-15);

  bm.bm25_b = 0.75;
  bm.mean_doc_len = 2.0;
  EXPECT_NEAR(apply_weighting(vec(2, {{0, 1.0}, {1, 1.0}}), bm).at(0), 1.0, 1e-15);

  EXPECT_THROW(apply_weighting(vec(3, {{0, 1.0}}), bm), Error);
}

TEST(WeightingTest, Bm25MatchesOkapiFormula) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SparseVector> docs;
    for (int d = 0; d < 8; ++d) {
      std::map<FeatureIndex, double> m;
      for (FeatureIndex f = 0; f < 6; ++f) {
        if (rng() % 2 == 0) m[f] = static_cast<double>(1 + rng() % 5);
      }
      docs.push_back(vec(6, m));
    }
    const auto model = fit_weighting(docs, Weighting::kBm25);
    double total = 0.0;
    for (const auto& d : docs) total += d.sum();
    const double avg = total / 8.0;
    for (const auto& d : docs) {
      const auto w = apply_weighting(d, model);
      for (std::size_t i = 0; i < d.nnz(); ++i) {
        const double tf = d.weight(i);
        const double expected = model.idf[d.index(i)] * tf * 2.6 /
                                (tf + 1.6 * (1.0 - 0.75 + 0.75 * d.sum() / avg));
        EXPECT_NEAR(w.at(d.index(i)), expected, 1e-12);
      }
    }
  }
}

TEST(WeightingTest, Bm25WithZeroBIgnoresLength) {
  WeightingModel bm;
  bm.scheme = Weighting::kBm25;
  bm.idf = {1.3, 0.7, 2.0};
  bm.bm25_b = 0.0;
  bm.mean_doc_len = 3.0;
  const auto short_doc = apply_weighting(vec(3, {{0, 2.0}}), bm);
  const auto padded = apply_weighting(vec(3, {{0, 2.0}, {1, 40.0}}), bm);
  EXPECT_EQ(short_doc.at(0), padded.at(0));
}

std::vector<TokenSequence> training_tokens() {
  return {{"interest", "rate", "rise"}, {"bank", "rate"}, {"central", "bank", "policy"}};
}

std::shared_ptr<const ConceptMatcher> bank_matcher() {
  return std::make_shared<const ConceptMatcher>(
      std::vector<ConceptPhrase>{{0, {"interest", "rate"}}, {1, {"central", "bank"}}, {2, {"bank"}}}, 3);
}

TEST(VectorizerTest, TfIdfPipeline) {
  const auto train = training_tokens();
  const auto v = Vectorizer::fit(Vectorization::kTfIdf, train, nullptr);
  EXPECT_EQ(v.dim(), 6u);
  const TokenSequence doc{"bank", "bank", "policy", "unseen"};
  const auto counts = count_terms(doc, v.vocabulary());
  std::vector<SparseVector> train_counts;
  for (const auto& t : train) train_counts.push_back(count_terms(t, v.vocabulary()));
  const auto expected = l2_normalize(apply_weighting(counts, fit_weighting(train_counts, Weighting::kIdf)));
  const auto row = v.transform(doc);
  EXPECT_EQ(row.features, expected);
  EXPECT_EQ(row.counts, counts);
}

TEST(VectorizerTest, CtfIdfIsConcatenationOfBlocks) {
  const auto train = training_tokens();
  const auto matcher = bank_matcher();
  const auto ctf = Vectorizer::fit(Vectorization::kCtfIdf, train, matcher);
  const auto tf = Vectorizer::fit(Vectorization::kTfIdf, train, nullptr);
  const auto cf = Vectorizer::fit(Vectorization::kCfIdf, train, matcher);
  EXPECT_EQ(ctf.dim(), tf.dim() + cf.dim());
  const TokenSequence doc{"central", "bank", "interest", "rate"};
  EXPECT_EQ(ctf.transform(doc).features, concat(tf.transform(doc).features, cf.transform(doc).features));
  EXPECT_NEAR(ctf.transform(doc).features.norm(), std::sqrt(2.0), 1e-12);
}

TEST(VectorizerTest, AllVariantsHaveConsistentDimensions) {
  const auto train = training_tokens();
  for (const auto variant : all_vectorizations()) {
    const auto v = Vectorizer::fit(variant, train, bank_matcher());
    const auto row = v.transform({"bank", "rate"});
    EXPECT_EQ(row.features.dim(), v.dim()) << to_string(variant);
    EXPECT_EQ(row.counts.dim(), v.dim()) << to_string(variant);
    EXPECT_EQ(parse_vectorization(to_string(variant)), variant);
  }
  EXPECT_EQ(all_vectorizations().size(), 6u);
}

TEST(VectorizerTest, UnseenTokensGiveZeroVector) {
  const auto v = Vectorizer::fit(Vectorization::kBm25, training_tokens(), nullptr);
  EXPECT_TRUE(v.transform({"never", "seen"}).features.empty());
}

TEST(VectorizerTest, VocabularyComesFromTrainingOnly) {
  const auto v = Vectorizer::fit(Vectorization::kTfIdf, training_tokens(), nullptr);
  EXPECT_FALSE(v.vocabulary().index("unseen").has_value());
}

TEST(VectorizerTest, ConceptVariantsNeedMatcher) {
  EXPECT_THROW(Vectorizer::fit(Vectorization::kBm25C, training_tokens(), nullptr), ConfigError);
}

TEST(VectorizerTest, UnknownVariantListsValidNames) {
  try {
    parse_vectorization("tfidf2");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const auto v : all_vectorizations()) EXPECT_NE(msg.find(to_string(v)), std::string::npos);
  }
}

TEST(VectorizerTest, TransformIsDeterministic) {
  const auto a = Vectorizer::fit(Vectorization::kBm25Ct, training_tokens(), bank_matcher());
  const auto b = Vectorizer::fit(Vectorization::kBm25Ct, training_tokens(), bank_matcher());
  const TokenSequence doc{"bank", "interest", "rate", "policy"};
  EXPECT_EQ(a.transform(doc).features, b.transform(doc).features);
}

TEST(VectorDumpTest, WritesJsonLine) {
  std::ostringstream out;
  write_vector_dump(out, "d1", vec(4, {{1, 0.5}, {3, 0.25}}));
  EXPECT_EQ(out.str(), "{\"id\":\"d1\",\"indices\":[1,3],\"weights\":[0.5,0.25]}\n");
}

}  // namespace
}  // namespace semannot
