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

#ifndef SEMANNOT_LABELS_HPP_
#define SEMANNOT_LABELS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semannot/corpus.hpp"
#include "semannot/sparse.hpp"

namespace semannot {

using LabelIndex = std::uint32_t;
// Sorted label indices without duplicates.
using LabelSet = std::vector<LabelIndex>;

// Dense label indices 0..L-1 over the concept ids seen in training, in
// lexicographic id order (so index order is also ConceptId order).
class LabelSpace {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<ConceptId> ids);

  static LabelSpace from_documents(std::span<const Document> docs);

  std::size_t size() const { return ids_.size(); }
  const ConceptId& id(LabelIndex label) const { return ids_[label]; }
  const std::vector<ConceptId>& ids() const { return ids_; }
  std::optional<LabelIndex> index(std::string_view id) const;

  // Known labels of a gold set; unknown ids are skipped.
  LabelSet encode(std::span<const ConceptId> ids) const;
  std::vector<ConceptId> decode(const LabelSet& labels) const;

 private:
  std::vector<ConceptId> ids_;
  std::unordered_map<std::string, LabelIndex> index_;
};

// Per-document binary label rows (Y).
struct LabelMatrix {
  std::vector<LabelSet> rows;
  std::size_t n_labels = 0;

  static LabelMatrix build(std::span<const Document> docs, const LabelSpace& space);

  std::size_t n_docs() const { return rows.size(); }
  bool has(std::size_t doc, LabelIndex label) const;
  // Mean row size.
  double mean_labels_per_doc() const;
};

struct ScoredLabel {
  LabelIndex label;
  double score;
};

// Labels ordered by descending score (rank 1 first).
using Ranking = std::vector<ScoredLabel>;

// Sorts by descending score with ascending label index as tie-break.
void sort_ranking(Ranking& ranking);

// Everything a learner sees at fit time.
struct TrainingSet {
  std::vector<SparseVector> features;  // weighted, normalized
  std::vector<SparseVector> counts;    // raw counts, same index space
  LabelMatrix labels;

  std::size_t size() const { return features.size(); }
  std::size_t dim() const { return features.empty() ? 0 : features.front().dim(); }
};

}  // namespace semannot

#endif  // SEMANNOT_LABELS_HPP_
