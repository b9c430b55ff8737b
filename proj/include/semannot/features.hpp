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

#ifndef SEMANNOT_FEATURES_HPP_
#define SEMANNOT_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semannot/corpus.hpp"
#include "semannot/sparse.hpp"
#include "semannot/text.hpp"

namespace semannot {

// Token -> feature index, fitted on training documents and frozen afterwards.
// Indices follow the lexicographic order of the tokens.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  static Vocabulary fit(std::span<const TokenSequence> documents);

  std::size_t size() const { return tokens_.size(); }
  std::optional<FeatureIndex> index(std::string_view token) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, FeatureIndex> index_;
};

// Term frequencies over in-vocabulary tokens.
SparseVector count_terms(const TokenSequence& tokens, const Vocabulary& vocab);

// A thesaurus phrase after preprocessing, owned by one concept.
struct ConceptPhrase {
  std::size_t concept_ordinal;
  TokenSequence tokens;
};

// Aho-Corasick automaton over phrase token sequences. Each accepting state
// lists the concepts owning that phrase; concept feature index = thesaurus ordinal.
class ConceptMatcher {
 public:
  ConceptMatcher(std::vector<ConceptPhrase> phrases, std::size_t n_concepts);

  // Preprocesses every preferred and alternative label of the thesaurus.
  static ConceptMatcher build(const Thesaurus& thesaurus, const Preprocessor& preprocess);

  std::size_t n_concepts() const { return n_concepts_; }
  const std::vector<ConceptPhrase>& phrases() const { return phrases_; }

  // Greedy left-to-right scan: at each position the longest phrase starting
  // there is consumed and every concept owning it is counted once.
  SparseVector extract(const TokenSequence& tokens) const;

 private:
  struct Node {
    std::map<std::uint32_t, std::uint32_t> next;
    std::uint32_t fail = 0;
    std::uint32_t output = 0;  // nearest accepting node on the fail chain (0 = none)
    std::uint32_t depth = 0;
    std::vector<std::size_t> concepts;
  };

  void insert(const TokenSequence& phrase, std::size_t concept_ordinal);
  void link();
  std::uint32_t step(std::uint32_t state, std::uint32_t word) const;

  std::vector<ConceptPhrase> phrases_;
  std::size_t n_concepts_;
  std::unordered_map<std::string, std::uint32_t> words_;
  std::vector<Node> nodes_;
};

inline SparseVector extract_concepts(const TokenSequence& tokens, const ConceptMatcher& matcher) {
  return matcher.extract(tokens);
}

enum class Weighting { kNone, kIdf, kBm25 };

struct WeightingModel {
  Weighting scheme = Weighting::kNone;
  std::vector<double> idf;
  double bm25_k = 1.6;
  double bm25_b = 0.75;
  double mean_doc_len = 0.0;
  std::size_t n_docs = 0;

  std::size_t dim() const { return idf.size(); }
};

// idf(w) = 1 + ln((|D| + 1) / (df(w) + 1)), df counted on raw weights > 0.
WeightingModel fit_weighting(std::span<const SparseVector> documents, Weighting scheme,
                             double bm25_k = 1.6, double bm25_b = 0.75);

SparseVector apply_weighting(const SparseVector& v, const WeightingModel& model);

enum class Vectorization { kTfIdf, kBm25, kCfIdf, kBm25C, kCtfIdf, kBm25Ct };

Vectorization parse_vectorization(std::string_view name);
std::string_view to_string(Vectorization v);
const std::vector<Vectorization>& all_vectorizations();

bool uses_terms(Vectorization v);
bool uses_concepts(Vectorization v);
Weighting weighting_of(Vectorization v);

// A document ready for classification.
struct FeatureRow {
  // Re-weighted, block-wise L2-normalized features.
  SparseVector features;
  // Raw term/concept counts in the same index space (count-based learners).
  SparseVector counts;
};

// Fitted vectorization pipeline: vocabulary and re-weighting statistics come
// from the training documents only; transform is pure.
class Vectorizer {
 public:
  static Vectorizer fit(Vectorization variant, std::span<const TokenSequence> training,
                        std::shared_ptr<const ConceptMatcher> matcher);

  // Rebuilds a fitted pipeline from stored parts.
  Vectorizer(Vectorization variant, Vocabulary vocab, WeightingModel term_weighting,
             std::shared_ptr<const ConceptMatcher> matcher, WeightingModel concept_weighting);

  FeatureRow transform(const TokenSequence& tokens) const;

  Vectorization variant() const { return variant_; }
  std::size_t dim() const;
  const Vocabulary& vocabulary() const { return vocab_; }
  const WeightingModel& term_weighting() const { return term_weighting_; }
  const WeightingModel& concept_weighting() const { return concept_weighting_; }
  const std::shared_ptr<const ConceptMatcher>& matcher() const { return matcher_; }

 private:
  Vectorization variant_;
  Vocabulary vocab_;
  WeightingModel term_weighting_;
  std::shared_ptr<const ConceptMatcher> matcher_;
  WeightingModel concept_weighting_;
};

// Debug dump: one JSON object per line with id, indices and weights.
void write_vector_dump(std::ostream& out, std::string_view id, const SparseVector& v);

}  // namespace semannot

#endif  // SEMANNOT_FEATURES_HPP_
