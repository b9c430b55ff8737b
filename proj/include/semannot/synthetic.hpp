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

#ifndef SEMANNOT_SYNTHETIC_HPP_
#define SEMANNOT_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "semannot/corpus.hpp"

namespace semannot {

// Seeded generator of labelled toy corpora. Every label owns a set of keyword
// slots; each slot has one canonical word plus `synonyms_per_slot` synonyms,
// all registered as phrases of the label's concept.
struct SyntheticConfig {
  std::size_t n_docs = 1000;
  std::size_t n_labels = 20;
  std::size_t keywords_per_label = 3;
  std::size_t synonyms_per_slot = 0;
  std::size_t min_labels = 1;
  std::size_t max_labels = 3;
  std::size_t mentions_per_label = 2;
  std::size_t filler_words = 4;
  std::size_t filler_vocabulary = 300;
  // Probability that a mention is replaced by a keyword of a different label.
  double overlap = 0.0;
  // Probability that a mention uses a synonym instead of the canonical word.
  double synonym_rate = 0.0;
  // Extra words per label in the full text (0 disables full text).
  std::size_t fulltext_mentions = 0;
  std::uint64_t seed = 1;
};

struct SyntheticCorpus {
  std::vector<Document> documents;
  Thesaurus thesaurus;
};

SyntheticCorpus generate_synthetic(const SyntheticConfig& config);

}  // namespace semannot

#endif  // SEMANNOT_SYNTHETIC_HPP_
